#include "fairdiv/negotiation.hpp"

#include <algorithm>
#include <numeric>

namespace fairdiv {

namespace {

Rational sum(std::span<const Rational> values) {
    return std::accumulate(values.begin(), values.end(), Rational(0));
}

void require_valuations(const GoodsAllocation& allocation, std::span<const BundleValuation> valuations) {
    if (valuations.size() != allocation.agent_count()) {
        throw DomainError("negotiation: " + std::to_string(valuations.size()) + " valuations for " +
                          std::to_string(allocation.agent_count()) + " agents");
    }
}

PaymentFunction split_gain(const UtilityVector& changes, const std::vector<bool>& sharing) {
    const Rational gain = sum(changes);
    const auto sharers = static_cast<std::int64_t>(std::count(sharing.begin(), sharing.end(), true));
    std::vector<Rational> p(changes.size());
    for (std::size_t i = 0; i < changes.size(); ++i) {
        if (sharing[i]) p[i] = changes[i] - gain / Rational(sharers);
    }
    return PaymentFunction(std::move(p));
}

std::vector<bool> sharing_agents(const Deal& deal, PaymentPolicy policy) {
    const auto n = deal.before().agent_count();
    if (policy == PaymentPolicy::EqualSurplus) return std::vector<bool>(n, true);
    std::vector<bool> sharing(n, false);
    for (AgentId a : deal.involved()) sharing[a - 1] = true;
    return sharing;
}

std::optional<Deal> first_improving(const GoodsAllocation& current, const Rational& welfare,
                                    std::span<const BundleValuation> valuations,
                                    const std::vector<GoodsAllocation>& candidates) {
    for (const auto& candidate : candidates) {
        if (welfare < utilitarian_welfare(valuations, candidate)) return Deal(current, candidate);
    }
    return std::nullopt;
}

}  // namespace

Deal::Deal(GoodsAllocation before, GoodsAllocation after) : before_(std::move(before)), after_(std::move(after)) {
    if (before_.goods() != after_.goods() || before_.agent_count() != after_.agent_count()) {
        throw DomainError("deal: allocations must cover the same goods and agents");
    }
    if (before_ == after_) throw DomainError("deal: before and after allocations are identical");
}

std::vector<AgentId> Deal::involved() const {
    std::vector<AgentId> out;
    for (AgentId a = 1; a <= before_.agent_count(); ++a) {
        if (before_.bundle(a) != after_.bundle(a)) out.push_back(a);
    }
    return out;
}

PaymentFunction::PaymentFunction(std::vector<Rational> payments) : payments_(std::move(payments)) {
    if (const Rational total = sum(payments_); !total.is_zero()) {
        throw DomainError("payment function: payments sum to " + total.to_string() + ", must be exactly 0");
    }
}

const Rational& PaymentFunction::operator()(AgentId agent) const {
    require_agent(agent, payments_.size());
    return payments_[agent - 1];
}

UtilityVector valuation_changes(const Deal& deal, std::span<const BundleValuation> valuations) {
    require_valuations(deal.before(), valuations);
    UtilityVector changes;
    for (AgentId a = 1; a <= valuations.size(); ++a) {
        const auto& v = valuations[a - 1];
        changes.push_back(v(deal.after().bundle(a)) - v(deal.before().bundle(a)));
    }
    return changes;
}

Rational welfare_gain(const Deal& deal, std::span<const BundleValuation> valuations) {
    return sum(valuation_changes(deal, valuations));
}

bool is_ir(const Deal& deal, std::span<const BundleValuation> valuations) {
    return welfare_gain(deal, valuations).sign() > 0;
}

bool payments_make_ir(const Deal& deal, std::span<const BundleValuation> valuations, const PaymentFunction& payments) {
    const auto changes = valuation_changes(deal, valuations);
    if (payments.payments().size() != changes.size()) return false;
    for (AgentId a = 1; a <= changes.size(); ++a) {
        const Rational& p = payments(a);
        if (p < changes[a - 1]) continue;
        if (deal.before().bundle(a) == deal.after().bundle(a) && p.is_zero()) continue;
        return false;
    }
    return true;
}

bool payment_exists(const Deal& deal, std::span<const BundleValuation> valuations) {
    const auto changes = valuation_changes(deal, valuations);
    for (PaymentPolicy policy : {PaymentPolicy::InvolvedOnly, PaymentPolicy::EqualSurplus}) {
        if (payments_make_ir(deal, valuations, split_gain(changes, sharing_agents(deal, policy)))) return true;
    }
    return false;
}

PaymentPolicy parse_payment_policy(std::string_view name) {
    if (name == "equal-surplus") return PaymentPolicy::EqualSurplus;
    if (name == "involved-only") return PaymentPolicy::InvolvedOnly;
    throw DomainError("unknown payment policy '" + std::string(name) + "' (expected equal-surplus, involved-only)");
}

std::string to_string(PaymentPolicy policy) {
    return policy == PaymentPolicy::EqualSurplus ? "equal-surplus" : "involved-only";
}

PaymentFunction make_payments(const Deal& deal, std::span<const BundleValuation> valuations, PaymentPolicy policy) {
    const auto changes = valuation_changes(deal, valuations);
    if (const Rational gain = sum(changes); gain.sign() <= 0) {
        throw DomainError("deal is not individually rational: utilitarian welfare changes by " + gain.to_string() +
                          ", so no payment function can compensate every agent");
    }
    return split_gain(changes, sharing_agents(deal, policy));
}

DealGenerator parse_generator(std::string_view name) {
    if (name == "any") return DealGenerator::AnyImproving;
    if (name == "one-good") return DealGenerator::OneGood;
    if (name == "swap") return DealGenerator::Swap;
    throw DomainError("unknown deal generator '" + std::string(name) + "' (expected any, one-good, swap)");
}

std::string to_string(DealGenerator generator) {
    switch (generator) {
        case DealGenerator::AnyImproving: return "any";
        case DealGenerator::OneGood: return "one-good";
        case DealGenerator::Swap: return "swap";
    }
    return "?";
}

std::optional<Deal> find_ir_deal(const GoodsAllocation& current, std::span<const BundleValuation> valuations,
                                 DealGenerator generator, Rng& rng) {
    require_valuations(current, valuations);
    const Rational welfare = utilitarian_welfare(valuations, current);
    const auto n = current.agent_count();
    const std::vector<Good> goods(current.goods().begin(), current.goods().end());

    switch (generator) {
        case DealGenerator::AnyImproving: {
            std::uint64_t total = 1;
            for (std::size_t g = 0; g < goods.size(); ++g) {
                total *= n;
                if (total > kAnyImprovingGuard) {
                    throw GuardExceeded("any-improving deal search: " + std::to_string(n) + "^" +
                                        std::to_string(goods.size()) + " allocations exceed the limit of " +
                                        std::to_string(kAnyImprovingGuard));
                }
            }
            const auto offset = static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(total) - 1));
            for (std::uint64_t t = 0; t < total; ++t) {
                std::uint64_t code = (offset + t) % total;
                std::vector<Bundle> bundles(n);
                for (const auto& g : goods) {
                    bundles[code % n].insert(g);
                    code /= n;
                }
                GoodsAllocation candidate(current.goods(), std::move(bundles));
                if (candidate != current && welfare < utilitarian_welfare(valuations, candidate)) {
                    return Deal(current, std::move(candidate));
                }
            }
            return std::nullopt;
        }
        case DealGenerator::OneGood: {
            std::vector<GoodsAllocation> candidates;
            for (const auto& g : goods) {
                const AgentId from = current.holder(g);
                for (AgentId to = 1; to <= n; ++to) {
                    if (to != from) candidates.push_back(current.with_moved(g, to));
                }
            }
            rng.shuffle(candidates);
            return first_improving(current, welfare, valuations, candidates);
        }
        case DealGenerator::Swap: {
            std::vector<GoodsAllocation> candidates;
            for (std::size_t x = 0; x < goods.size(); ++x) {
                for (std::size_t y = x + 1; y < goods.size(); ++y) {
                    const AgentId hx = current.holder(goods[x]);
                    const AgentId hy = current.holder(goods[y]);
                    if (hx != hy) candidates.push_back(current.with_moved(goods[x], hy).with_moved(goods[y], hx));
                }
            }
            rng.shuffle(candidates);
            return first_improving(current, welfare, valuations, candidates);
        }
    }
    return std::nullopt;
}

NegotiationState run_negotiation(const GoodsAllocation& initial, std::span<const BundleValuation> valuations,
                                 DealGenerator generator, std::uint64_t seed, PaymentPolicy policy) {
    require_valuations(initial, valuations);
    NegotiationState state{initial, std::vector<Rational>(initial.agent_count()), {}, seed};
    Rng rng(seed);
    while (auto deal = find_ir_deal(state.allocation, valuations, generator, rng)) {
        PaymentFunction payments = make_payments(*deal, valuations, policy);
        const Rational before = utilitarian_welfare(valuations, deal->before());
        const Rational after = utilitarian_welfare(valuations, deal->after());
        for (std::size_t i = 0; i < state.balance.size(); ++i) state.balance[i] += payments.payments()[i];
        state.allocation = deal->after();
        state.trace.push_back({std::move(*deal), std::move(payments), before, after});
    }
    return state;
}

}  // namespace fairdiv
