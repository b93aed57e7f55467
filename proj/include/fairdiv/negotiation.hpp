#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/random.hpp"

namespace fairdiv {

/// A pair of distinct complete allocations over the same goods and agents.
class Deal {
public:
    /// Throws DomainError if the allocations coincide or differ in goods or
    /// agent count.
    Deal(GoodsAllocation before, GoodsAllocation after);

    [[nodiscard]] const GoodsAllocation& before() const { return before_; }
    [[nodiscard]] const GoodsAllocation& after() const { return after_; }
    /// Agents whose bundle changes.
    [[nodiscard]] std::vector<AgentId> involved() const;

private:
    GoodsAllocation before_;
    GoodsAllocation after_;
};

/// Side payments for one deal; entry k is paid by agent k + 1 and the
/// entries sum to exactly 0.
class PaymentFunction {
public:
    explicit PaymentFunction(std::vector<Rational> payments);

    [[nodiscard]] const std::vector<Rational>& payments() const { return payments_; }
    [[nodiscard]] const Rational& operator()(AgentId agent) const;

private:
    std::vector<Rational> payments_;
};

/// v_i(after) - v_i(before) for every agent.
UtilityVector valuation_changes(const Deal& deal, std::span<const BundleValuation> valuations);

/// Utilitarian welfare after the deal minus welfare before it.
Rational welfare_gain(const Deal& deal, std::span<const BundleValuation> valuations);

/// Individual rationality via the welfare characterisation: a deal is IR iff
/// it strictly increases utilitarian welfare.
bool is_ir(const Deal& deal, std::span<const BundleValuation> valuations);

/// Checks the IR definition directly for one payment function: every agent's
/// valuation change strictly exceeds her payment, except that an agent whose
/// bundle is unchanged may pay exactly 0.
bool payments_make_ir(const Deal& deal, std::span<const BundleValuation> valuations, const PaymentFunction& payments);

/// Definition-based existence test, independent of the welfare
/// characterisation: tries the candidate payment functions of every policy and
/// reports whether one satisfies payments_make_ir.
bool payment_exists(const Deal& deal, std::span<const BundleValuation> valuations);

enum class PaymentPolicy {
    /// p(i) = change_i - gain / n for every agent.
    EqualSurplus,
    /// The gain is shared among agents whose bundle changes; others pay 0.
    InvolvedOnly,
};

PaymentPolicy parse_payment_policy(std::string_view name);
std::string to_string(PaymentPolicy policy);

/// Throws DomainError unless the deal is IR.
PaymentFunction make_payments(const Deal& deal, std::span<const BundleValuation> valuations,
                              PaymentPolicy policy = PaymentPolicy::EqualSurplus);

enum class DealGenerator {
    AnyImproving,  // any reallocation of any goods among any agents
    OneGood,       // one good changes hands
    Swap,          // two agents exchange one good each
};

DealGenerator parse_generator(std::string_view name);
std::string to_string(DealGenerator generator);

/// Largest number of allocations AnyImproving will enumerate.
inline constexpr std::uint64_t kAnyImprovingGuard = 1'000'000;

/// First IR deal from `current` in the generator's class, in an order drawn
/// from `rng`; nullopt iff the class holds none. AnyImproving throws
/// GuardExceeded beyond kAnyImprovingGuard allocations.
std::optional<Deal> find_ir_deal(const GoodsAllocation& current, std::span<const BundleValuation> valuations,
                                 DealGenerator generator, Rng& rng);

struct TraceStep {
    Deal deal;
    PaymentFunction payments;
    Rational welfare_before;
    Rational welfare_after;
};

struct NegotiationState {
    GoodsAllocation allocation;
    /// Cumulative payments per agent.
    std::vector<Rational> balance;
    std::vector<TraceStep> trace;
    std::uint64_t rng_seed = 0;
};

/// Applies IR deals until none remains in the generator's class.
NegotiationState run_negotiation(const GoodsAllocation& initial, std::span<const BundleValuation> valuations,
                                 DealGenerator generator, std::uint64_t seed,
                                 PaymentPolicy policy = PaymentPolicy::EqualSurplus);

}  // namespace fairdiv
