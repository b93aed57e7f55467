#include "fairdiv/core.hpp"

#include <algorithm>
#include <sstream>

namespace fairdiv {

UtilityVector ordered(std::span<const Rational> u) {
    UtilityVector sorted(u.begin(), u.end());
    std::sort(sorted.begin(), sorted.end());
    return sorted;
}

std::string format_vector(std::span<const Rational> u) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i) os << ",";
        os << u[i];
    }
    os << ">";
    return os.str();
}

std::string format_bundle(const Bundle& bundle) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& g : bundle) {
        if (!first) os << ",";
        os << g;
        first = false;
    }
    os << "}";
    return os.str();
}

void require_agent(AgentId agent, std::size_t count) {
    if (agent < 1 || agent > count) {
        throw DomainError("unknown agent id " + std::to_string(agent) + " (agents are 1.." +
                          std::to_string(count) + ")");
    }
}

GoodsAllocation::GoodsAllocation(Bundle goods, std::vector<Bundle> bundles)
    : goods_(std::move(goods)), bundles_(std::move(bundles)) {
    if (bundles_.empty()) throw DomainError("allocation: at least one agent is required");
    Bundle seen;
    for (std::size_t i = 0; i < bundles_.size(); ++i) {
        for (const auto& g : bundles_[i]) {
            if (!goods_.contains(g)) {
                throw DomainError("allocation: agent " + std::to_string(i + 1) + " holds unknown good '" + g + "'");
            }
            if (!seen.insert(g).second) {
                throw DomainError("allocation: good '" + g + "' is assigned to more than one agent");
            }
        }
    }
    if (seen.size() != goods_.size()) {
        for (const auto& g : goods_) {
            if (!seen.contains(g)) {
                throw DomainError("allocation: good '" + g + "' is unassigned (allocations must be complete)");
            }
        }
    }
}

GoodsAllocation GoodsAllocation::all_to_first(Bundle goods, std::size_t agent_count) {
    std::vector<Bundle> bundles(agent_count);
    if (agent_count > 0) bundles[0] = goods;
    return GoodsAllocation(std::move(goods), std::move(bundles));
}

const Bundle& GoodsAllocation::bundle(AgentId agent) const {
    require_agent(agent, bundles_.size());
    return bundles_[agent - 1];
}

AgentId GoodsAllocation::holder(const Good& good) const {
    for (std::size_t i = 0; i < bundles_.size(); ++i) {
        if (bundles_[i].contains(good)) return i + 1;
    }
    throw DomainError("allocation: unknown good '" + good + "'");
}

GoodsAllocation GoodsAllocation::with_moved(const Good& good, AgentId to) const {
    require_agent(to, bundles_.size());
    const AgentId from = holder(good);
    GoodsAllocation copy = *this;
    copy.bundles_[from - 1].erase(good);
    copy.bundles_[to - 1].insert(good);
    return copy;
}

BundleValuation::BundleValuation(std::string description, Function function)
    : description_(std::move(description)), function_(std::move(function)) {}

BundleValuation BundleValuation::additive(std::map<Good, Rational> values) {
    auto shared = std::make_shared<const std::map<Good, Rational>>(std::move(values));
    return BundleValuation("additive", [shared](const Bundle& b) {
        Rational total;
        for (const auto& g : b) {
            if (auto it = shared->find(g); it != shared->end()) total += it->second;
        }
        return total;
    });
}

BundleValuation BundleValuation::constant(Rational value) {
    return BundleValuation("constant", [value](const Bundle&) { return value; });
}

BundleValuation BundleValuation::per_item(Rational value_per_good) {
    return BundleValuation("per-item", [value_per_good](const Bundle& b) {
        return value_per_good * Rational(static_cast<std::int64_t>(b.size()));
    });
}

BundleValuation BundleValuation::table(std::map<Bundle, Rational> entries, Rational fallback) {
    auto shared = std::make_shared<const std::map<Bundle, Rational>>(std::move(entries));
    return BundleValuation("table", [shared, fallback](const Bundle& b) {
        if (auto it = shared->find(b); it != shared->end()) return it->second;
        return fallback;
    });
}

Rational utility_of_allocation(const BundleValuation& valuation, const GoodsAllocation& allocation,
                               AgentId agent) {
    return valuation(allocation.bundle(agent));
}

MoneyState::MoneyState(GoodsAllocation allocation, std::vector<Rational> balance)
    : allocation_(std::move(allocation)), balance_(std::move(balance)) {
    if (balance_.size() != allocation_.agent_count()) {
        throw DomainError("money state: balance has " + std::to_string(balance_.size()) + " entries for " +
                          std::to_string(allocation_.agent_count()) + " agents");
    }
    Rational total;
    for (const auto& b : balance_) total += b;
    if (!total.is_zero()) {
        throw DomainError("money state: payment balance sums to " + total.to_string() + ", must be exactly 0");
    }
}

MoneyState::MoneyState(GoodsAllocation allocation)
    : MoneyState(allocation, std::vector<Rational>(allocation.agent_count())) {}

const Rational& MoneyState::paid_by(AgentId agent) const {
    require_agent(agent, balance_.size());
    return balance_[agent - 1];
}

Rational utility_of_state(const BundleValuation& valuation, const MoneyState& state, AgentId agent) {
    return utility_of_allocation(valuation, state.allocation(), agent) - state.paid_by(agent);
}

Rational utilitarian_welfare(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation) {
    Rational total;
    for (const auto& u : utility_vector(valuations, allocation)) total += u;
    return total;
}

UtilityVector utility_vector(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation) {
    if (valuations.size() != allocation.agent_count()) {
        throw DomainError("valuation count " + std::to_string(valuations.size()) + " does not match agent count " +
                          std::to_string(allocation.agent_count()));
    }
    UtilityVector u;
    u.reserve(valuations.size());
    for (std::size_t i = 0; i < valuations.size(); ++i) u.push_back(valuations[i](allocation.bundles()[i]));
    return u;
}

}  // namespace fairdiv
