// Proportional procedures: cut-and-choose, Steinhaus, Banach-Knaster,
// Dubins-Spanier and Even-Paz.

#include <algorithm>
#include <numeric>
#include <optional>

#include "detail.hpp"

namespace fairdiv::cake {

namespace detail {

std::string player(AgentId agent) { return "player " + std::to_string(agent); }

std::pair<Piece, Piece> cut_and_choose_on(QueryOracle& oracle, AgentId cutter, AgentId chooser, const Piece& piece,
                                          std::vector<std::string>& events) {
    const Rational whole = oracle.eval(cutter, piece);
    const Rational cut = oracle.mark_in_piece(cutter, piece, whole / Rational(2));
    auto [left, right] = piece.split_at(cut);
    events.push_back(player(cutter) + " cuts " + piece.to_string() + " at " + cut.to_string());
    const Rational left_value = oracle.eval(chooser, left);
    const Rational right_value = oracle.eval(chooser, right);
    if (right_value <= left_value) {
        events.push_back(player(chooser) + " chooses " + left.to_string());
        return {std::move(right), std::move(left)};
    }
    events.push_back(player(chooser) + " chooses " + right.to_string());
    return {std::move(left), std::move(right)};
}

std::size_t pick_best(QueryOracle& oracle, AgentId agent, std::span<const Piece> candidates,
                      std::span<const bool> available) {
    std::optional<std::size_t> best;
    Rational best_value;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (!available[k]) continue;
        Rational value = oracle.eval(agent, candidates[k]);
        if (!best || best_value < value) {
            best = k;
            best_value = std::move(value);
        }
    }
    if (!best) throw DomainError("no piece left to pick");
    return *best;
}

}  // namespace detail

using detail::player;

CakeDivision cut_and_choose(const CakeValuation& v1, const CakeValuation& v2) {
    const std::vector<CakeValuation> valuations{v1, v2};
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    auto [cutter_part, chooser_part] = detail::cut_and_choose_on(oracle, 1, 2, Piece::whole(), events);
    return make_division({std::move(cutter_part), std::move(chooser_part)}, 1, oracle.take_log(), std::move(events));
}

CakeDivision steinhaus(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3) {
    const std::vector<CakeValuation> valuations{v1, v2, v3};
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    const Rational third(1, 3);

    const Rational x1 = oracle.mark(1, Rational(0), third);
    const Rational x2 = oracle.mark(1, x1, third);
    const std::vector<Piece> pieces{Piece::between(Rational(0), x1), Piece::between(x1, x2),
                                    Piece::between(x2, Rational(1))};
    events.push_back("player 1 cuts at " + x1.to_string() + " and " + x2.to_string());

    // Pass iff at least two pieces are worth >= 1/3; otherwise label the two
    // least valuable pieces bad.
    auto bad_labels = [&](AgentId agent) -> std::optional<std::array<bool, 3>> {
        std::array<Rational, 3> values;
        int acceptable = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            values[k] = oracle.eval(agent, pieces[k]);
            if (third <= values[k]) ++acceptable;
        }
        if (acceptable >= 2) {
            events.push_back(player(agent) + " passes");
            return std::nullopt;
        }
        std::array<std::size_t, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::array<bool, 3> bad{false, false, false};
        bad[order[0]] = bad[order[1]] = true;
        events.push_back(player(agent) + " labels pieces " + std::to_string(std::min(order[0], order[1]) + 1) + " and " +
                         std::to_string(std::max(order[0], order[1]) + 1) + " bad");
        return bad;
    };

    std::vector<Piece> result(3);
    auto pick_in_order = [&](std::initializer_list<AgentId> order) {
        std::array<bool, 3> available{true, true, true};
        for (AgentId agent : order) {
            const auto k = detail::pick_best(oracle, agent, pieces, available);
            available[k] = false;
            result[agent - 1] = pieces[k];
            events.push_back(player(agent) + " picks piece " + std::to_string(k + 1));
        }
    };

    const auto labels2 = bad_labels(2);
    if (!labels2) {
        pick_in_order({3, 2, 1});
        return make_division(std::move(result), 2, oracle.take_log(), std::move(events));
    }
    const auto labels3 = bad_labels(3);
    if (!labels3) {
        pick_in_order({2, 3, 1});
        return make_division(std::move(result), 2, oracle.take_log(), std::move(events));
    }
    // Each player labelled two of three pieces, so some piece is bad for both.
    std::size_t doubly_bad = 0;
    while (!((*labels2)[doubly_bad] && (*labels3)[doubly_bad])) ++doubly_bad;
    result[0] = pieces[doubly_bad];
    events.push_back("player 1 takes doubly-bad piece " + std::to_string(doubly_bad + 1));
    Piece rest;
    for (std::size_t k = 0; k < 3; ++k) {
        if (k != doubly_bad) rest = rest.unite(pieces[k]);
    }
    auto [part2, part3] = detail::cut_and_choose_on(oracle, 2, 3, rest, events);
    result[1] = std::move(part2);
    result[2] = std::move(part3);
    return make_division(std::move(result), 3, oracle.take_log(), std::move(events));
}

CakeDivision banach_knaster(std::span<const CakeValuation> valuations, bool contiguous) {
    const auto n = valuations.size();
    if (n < 2) throw DomainError("banach-knaster needs at least 2 players");
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    const Rational share(1, static_cast<std::int64_t>(n));

    std::vector<AgentId> remaining(n);
    std::iota(remaining.begin(), remaining.end(), AgentId{1});
    std::vector<Piece> result(n);
    Piece rest = Piece::whole();
    std::size_t knife_cuts = 0;

    while (remaining.size() > 2) {
        const AgentId cutter = remaining.front();
        Rational knife = oracle.mark_in_piece(cutter, rest, share);
        auto [piece, untouched] = rest.split_at(knife);
        Piece trimmings;
        if (!contiguous) ++knife_cuts;
        events.push_back(player(cutter) + " cuts off " + piece.to_string());
        AgentId holder = cutter;
        for (std::size_t r = 1; r < remaining.size(); ++r) {
            const AgentId agent = remaining[r];
            const Rational value = oracle.eval(agent, piece);
            if (!(share < value)) continue;
            if (contiguous) {
                knife = oracle.mark_in_piece(agent, rest, share);
                piece = rest.split_at(knife).first;
                events.push_back(player(agent) + " moves the knife to " + knife.to_string());
            } else {
                const Rational trim_at = oracle.mark_in_piece(agent, piece, value - share);
                auto [trimmed_off, kept] = piece.split_at(trim_at);
                trimmings = trimmings.unite(trimmed_off);
                piece = std::move(kept);
                ++knife_cuts;
                events.push_back(player(agent) + " trims the piece to " + piece.to_string());
            }
            holder = agent;
        }
        if (contiguous) {
            ++knife_cuts;
            untouched = rest.split_at(knife).second;
        }
        events.push_back(player(holder) + " is the last diminisher and takes " + piece.to_string());
        result[holder - 1] = piece;
        rest = untouched.unite(trimmings);
        std::erase(remaining, holder);
    }

    auto [cutter_part, chooser_part] = detail::cut_and_choose_on(oracle, remaining[0], remaining[1], rest, events);
    ++knife_cuts;
    result[remaining[0] - 1] = std::move(cutter_part);
    result[remaining[1] - 1] = std::move(chooser_part);
    return make_division(std::move(result), knife_cuts, oracle.take_log(), std::move(events));
}

CakeDivision dubins_spanier(std::span<const CakeValuation> valuations) {
    const auto n = valuations.size();
    if (n < 2) throw DomainError("dubins-spanier needs at least 2 players");
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    const Rational share(1, static_cast<std::int64_t>(n));

    std::vector<AgentId> remaining(n);
    std::iota(remaining.begin(), remaining.end(), AgentId{1});
    std::vector<Piece> result(n);
    Rational left(0);
    std::size_t knife_cuts = 0;

    while (remaining.size() > 1) {
        std::optional<std::pair<Rational, AgentId>> winner;
        for (AgentId agent : remaining) {
            Rational stop = oracle.mark(agent, left, share);
            if (!winner || stop < winner->first) winner.emplace(std::move(stop), agent);
        }
        const auto& [stop, agent] = *winner;
        result[agent - 1] = Piece::between(left, stop);
        events.push_back(player(agent) + " shouts stop at " + stop.to_string());
        left = stop;
        ++knife_cuts;
        std::erase(remaining, agent);
    }
    result[remaining.front() - 1] = Piece::between(left, Rational(1));
    events.push_back(player(remaining.front()) + " takes the rest");
    return make_division(std::move(result), knife_cuts, oracle.take_log(), std::move(events));
}

namespace {

void even_paz_split(QueryOracle& oracle, std::vector<AgentId> players, const Rational& a, const Rational& b,
                    std::vector<Piece>& result, std::size_t& knife_cuts, std::vector<std::string>& events) {
    const auto m = players.size();
    if (m == 1) {
        result[players.front() - 1] = Piece::between(a, b);
        return;
    }
    const auto k = m / 2;
    const Rational ratio(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m));
    const Piece subcake = Piece::between(a, b);
    std::vector<std::pair<Rational, AgentId>> marks;
    for (AgentId agent : players) {
        const Rational worth = oracle.eval(agent, subcake);
        marks.emplace_back(oracle.mark(agent, a, worth * ratio), agent);
    }
    std::sort(marks.begin(), marks.end());
    const Rational cut = marks[k - 1].first;
    ++knife_cuts;
    std::vector<AgentId> left_group;
    std::vector<AgentId> right_group;
    for (std::size_t r = 0; r < m; ++r) (r < k ? left_group : right_group).push_back(marks[r].second);
    std::sort(left_group.begin(), left_group.end());
    std::sort(right_group.begin(), right_group.end());
    events.push_back("cut " + subcake.to_string() + " at " + cut.to_string() + " for " + std::to_string(k) + ":" +
                     std::to_string(m - k));
    even_paz_split(oracle, std::move(left_group), a, cut, result, knife_cuts, events);
    even_paz_split(oracle, std::move(right_group), cut, b, result, knife_cuts, events);
}

}  // namespace

CakeDivision even_paz(std::span<const CakeValuation> valuations) {
    const auto n = valuations.size();
    if (n < 1) throw DomainError("even-paz needs at least 1 player");
    QueryOracle oracle(valuations);
    std::vector<std::string> events;
    std::vector<AgentId> players(n);
    std::iota(players.begin(), players.end(), AgentId{1});
    std::vector<Piece> result(n);
    std::size_t knife_cuts = 0;
    even_paz_split(oracle, std::move(players), Rational(0), Rational(1), result, knife_cuts, events);
    return make_division(std::move(result), knife_cuts, oracle.take_log(), std::move(events));
}

}  // namespace fairdiv::cake
