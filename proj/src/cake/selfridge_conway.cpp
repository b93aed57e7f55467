#include <algorithm>
#include <array>

#include "detail.hpp"

namespace fairdiv::cake {

using detail::player;

CakeDivision selfridge_conway(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3) {
    const std::vector<CakeValuation> valuations{v1, v2, v3};
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    const Rational third(1, 3);

    const Rational x1 = oracle.mark(1, Rational(0), third);
    const Rational x2 = oracle.mark(1, x1, third);
    std::vector<Piece> pieces{Piece::between(Rational(0), x1), Piece::between(x1, x2), Piece::between(x2, Rational(1))};
    std::size_t knife_cuts = 2;
    events.push_back("player 1 cuts at " + x1.to_string() + " and " + x2.to_string());

    std::array<Rational, 3> values2;
    for (std::size_t k = 0; k < 3; ++k) values2[k] = oracle.eval(2, pieces[k]);
    std::array<std::size_t, 3> rank{0, 1, 2};
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) { return values2[b] < values2[a]; });

    std::vector<Piece> result(3);
    std::array<bool, 3> available{true, true, true};
    auto take = [&](AgentId agent, std::size_t k) {
        available[k] = false;
        result[agent - 1] = pieces[k];
        events.push_back(player(agent) + " picks piece " + std::to_string(k + 1));
    };

    if (values2[rank[0]] == values2[rank[1]]) {
        events.push_back("player 2 passes");
        for (AgentId agent : {AgentId{3}, AgentId{2}, AgentId{1}}) take(agent, detail::pick_best(oracle, agent, pieces, available));
        return make_division(std::move(result), knife_cuts, oracle.take_log(), std::move(events));
    }

    // Player 2 trims her favourite from the right until it ties her second.
    const std::size_t trimmed = rank[0];
    const Rational trim_at = oracle.mark(2, pieces[trimmed].leftmost(), values2[rank[1]]);
    auto [kept, trimmings] = pieces[trimmed].split_at(trim_at);
    pieces[trimmed] = std::move(kept);
    ++knife_cuts;
    events.push_back("player 2 trims piece " + std::to_string(trimmed + 1) + " at " + trim_at.to_string());

    take(3, detail::pick_best(oracle, 3, pieces, available));
    take(2, available[trimmed] ? trimmed : detail::pick_best(oracle, 2, pieces, available));
    take(1, detail::pick_best(oracle, 1, pieces, available));

    const AgentId trimmed_holder = result[1] == pieces[trimmed] ? 2 : 3;
    const AgentId cutter = trimmed_holder == 2 ? 3 : 2;
    const AgentId non_cutter = trimmed_holder;
    const Rational worth = oracle.eval(cutter, trimmings);
    const Rational y1 = oracle.mark_in_piece(cutter, trimmings, worth / Rational(3));
    const Rational y2 = oracle.mark_in_piece(cutter, trimmings, worth * Rational(2, 3));
    knife_cuts += 2;
    events.push_back(player(cutter) + " cuts the trimmings " + trimmings.to_string() + " at " + y1.to_string() + " and " +
                     y2.to_string());
    auto [first, tail] = trimmings.split_at(y1);
    auto [second, third_part] = tail.split_at(y2);
    const std::vector<Piece> shares{std::move(first), std::move(second), std::move(third_part)};
    std::array<bool, 3> share_available{true, true, true};
    for (AgentId agent : {non_cutter, AgentId{1}, cutter}) {
        const auto k = detail::pick_best(oracle, agent, shares, share_available);
        share_available[k] = false;
        result[agent - 1] = result[agent - 1].unite(shares[k]);
        events.push_back(player(agent) + " picks trimming " + std::to_string(k + 1));
    }
    return make_division(std::move(result), knife_cuts, oracle.take_log(), std::move(events));
}

}  // namespace fairdiv::cake
