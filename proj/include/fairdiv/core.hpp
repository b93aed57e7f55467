#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// Agents are numbered 1..n.
using AgentId = std::size_t;

/// Goods are opaque strings, ordered lexicographically.
using Good = std::string;
using Bundle = std::set<Good>;

/// One entry per agent; entry k belongs to agent k + 1.
using UtilityVector = std::vector<Rational>;

/// Entries of `u` in ascending order.
UtilityVector ordered(std::span<const Rational> u);

std::string format_vector(std::span<const Rational> u);
std::string format_bundle(const Bundle& bundle);

/// Complete assignment of a finite good set to agents 1..n; bundles are
/// pairwise disjoint and cover every good.
class GoodsAllocation {
public:
    /// Throws DomainError when bundles overlap, reference unknown goods, or
    /// leave a good unassigned.
    GoodsAllocation(Bundle goods, std::vector<Bundle> bundles);

    /// Every good assigned to agent 1.
    static GoodsAllocation all_to_first(Bundle goods, std::size_t agent_count);

    [[nodiscard]] std::size_t agent_count() const { return bundles_.size(); }
    [[nodiscard]] const Bundle& goods() const { return goods_; }
    [[nodiscard]] const Bundle& bundle(AgentId agent) const;
    [[nodiscard]] const std::vector<Bundle>& bundles() const { return bundles_; }
    /// Agent currently holding `good`.
    [[nodiscard]] AgentId holder(const Good& good) const;

    /// Copy with `good` handed to `to`.
    [[nodiscard]] GoodsAllocation with_moved(const Good& good, AgentId to) const;

    friend bool operator==(const GoodsAllocation&, const GoodsAllocation&) = default;

private:
    Bundle goods_;
    std::vector<Bundle> bundles_;
};

/// Valuation over bundles of indivisible goods.
class BundleValuation {
public:
    using Function = std::function<Rational(const Bundle&)>;

    BundleValuation(std::string description, Function function);

    static BundleValuation additive(std::map<Good, Rational> values);
    static BundleValuation constant(Rational value);
    static BundleValuation per_item(Rational value_per_good);
    /// Explicit table; bundles not listed are worth `fallback`.
    static BundleValuation table(std::map<Bundle, Rational> entries, Rational fallback = Rational(0));

    Rational operator()(const Bundle& bundle) const { return function_(bundle); }
    [[nodiscard]] const std::string& description() const { return description_; }

private:
    std::string description_;
    Function function_;
};

/// Agent's valuation of the bundle she holds under `allocation`.
Rational utility_of_allocation(const BundleValuation& valuation, const GoodsAllocation& allocation,
                               AgentId agent);

/// Allocation together with a payment balance that sums to zero.
class MoneyState {
public:
    /// Throws DomainError if the balance does not sum to exactly 0 or has the
    /// wrong length.
    MoneyState(GoodsAllocation allocation, std::vector<Rational> balance);
    explicit MoneyState(GoodsAllocation allocation);

    [[nodiscard]] const GoodsAllocation& allocation() const { return allocation_; }
    [[nodiscard]] const std::vector<Rational>& balance() const { return balance_; }
    [[nodiscard]] const Rational& paid_by(AgentId agent) const;

private:
    GoodsAllocation allocation_;
    std::vector<Rational> balance_;
};

/// Quasi-linear utility: valuation of the held bundle minus the money paid.
Rational utility_of_state(const BundleValuation& valuation, const MoneyState& state, AgentId agent);

/// Sum of agents' valuations of their own bundles.
Rational utilitarian_welfare(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation);

/// u_i(A(i)) for every agent i.
UtilityVector utility_vector(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation);

/// Throws DomainError unless 1 <= agent <= count.
void require_agent(AgentId agent, std::size_t count);

}  // namespace fairdiv
