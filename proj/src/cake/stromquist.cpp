// Moving-knife simulation. Between consecutive event points every knife,
// the median knife and every player's value of the three pieces is linear in
// the referee position, so each shout point is found in closed form.

#include <algorithm>
#include <optional>

#include "detail.hpp"

namespace fairdiv::cake {

using detail::player;

namespace {

using Valuations = std::array<const CakeValuation*, 3>;

Rational halving_knife(const CakeValuation& v, const Rational& referee) {
    return v.inverse_cumulative((v.cumulative(referee) + Rational(1)) / Rational(2));
}

struct Knives {
    std::array<Rational, 3> position;
    /// Player ids sorted by (knife position, id).
    std::array<AgentId, 3> order;

    [[nodiscard]] const Rational& median() const { return position[order[1] - 1]; }
};

Knives knives_at(const Valuations& vs, const Rational& referee) {
    Knives k;
    for (std::size_t i = 0; i < 3; ++i) k.position[i] = halving_knife(*vs[i], referee);
    k.order = {1, 2, 3};
    std::sort(k.order.begin(), k.order.end(), [&](AgentId a, AgentId b) {
        if (k.position[a - 1] != k.position[b - 1]) return k.position[a - 1] < k.position[b - 1];
        return a < b;
    });
    return k;
}

/// Both shout conditions, as values that must be >= 0: the left piece is worth
/// at least the middle piece and at least the right piece.
std::pair<Rational, Rational> shout_margins(const CakeValuation& v, const Rational& referee, const Rational& median) {
    const Rational left = v.cumulative(referee);
    const Rational at_median = v.cumulative(median);
    return {left - (at_median - left), left - (Rational(1) - at_median)};
}

std::vector<Rational> event_points(const Valuations& vs) {
    std::vector<Rational> points{Rational(0), Rational(1)};
    for (const auto* v : vs) points.insert(points.end(), v->breakpoints().begin(), v->breakpoints().end());
    // Referee positions at which some knife crosses a breakpoint.
    for (const auto* holder : vs) {
        for (const auto* owner : vs) {
            for (const auto& b : owner->breakpoints()) {
                const Rational target = Rational(2) * holder->cumulative(b) - Rational(1);
                if (target.sign() >= 0) points.push_back(holder->inverse_cumulative(target));
            }
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    // Knife crossings; knives are linear between the points found so far.
    std::vector<Rational> crossings;
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const Rational& a = points[s];
        const Rational& b = points[s + 1];
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                const Rational da = halving_knife(*vs[i], a) - halving_knife(*vs[j], a);
                const Rational db = halving_knife(*vs[i], b) - halving_knife(*vs[j], b);
                if (da.sign() * db.sign() < 0) crossings.push_back(a + da * (b - a) / (da - db));
            }
        }
    }
    points.insert(points.end(), crossings.begin(), crossings.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

/// {x in [a, b] : f(x) >= 0} for f linear on [a, b] with f(a) = fa, f(b) = fb.
std::optional<std::pair<Rational, Rational>> nonnegative_part(const Rational& a, const Rational& b, const Rational& fa,
                                                              const Rational& fb) {
    const bool at_a = fa.sign() >= 0;
    const bool at_b = fb.sign() >= 0;
    if (at_a && at_b) return std::make_pair(a, b);
    if (!at_a && !at_b) return std::nullopt;
    const Rational root = a + fa * (b - a) / (fa - fb);
    return at_a ? std::make_pair(a, root) : std::make_pair(root, b);
}

std::optional<Rational> first_shout(const Valuations& vs, std::size_t i, const std::vector<Rational>& points) {
    for (std::size_t s = 0; s + 1 < points.size(); ++s) {
        const Rational& a = points[s];
        const Rational& b = points[s + 1];
        const auto [middle_a, right_a] = shout_margins(*vs[i], a, knives_at(vs, a).median());
        const auto [middle_b, right_b] = shout_margins(*vs[i], b, knives_at(vs, b).median());
        const auto middle_ok = nonnegative_part(a, b, middle_a, middle_b);
        const auto right_ok = nonnegative_part(a, b, right_a, right_b);
        if (!middle_ok || !right_ok) continue;
        const Rational lo = max(middle_ok->first, right_ok->first);
        const Rational hi = min(middle_ok->second, right_ok->second);
        if (lo <= hi) return lo;
    }
    return std::nullopt;
}

}  // namespace

StromquistRun stromquist_run(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3) {
    const Valuations vs{&v1, &v2, &v3};
    const auto points = event_points(vs);

    StromquistRun run;
    std::optional<Rational> referee;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto shout = first_shout(vs, i, points);
        if (shout && (!referee || *shout < *referee)) {
            referee = shout;
            run.shouter = static_cast<AgentId>(i + 1);
        }
    }
    if (!referee) throw DomainError("stromquist: no player shouts");
    run.referee = *referee;

    const Knives knives = knives_at(vs, run.referee);
    run.knives = knives.position;
    run.median_holder = knives.order[1];
    const Rational median = knives.median();
    const Piece left = Piece::between(Rational(0), run.referee);
    const Piece middle = Piece::between(run.referee, median);
    const Piece right = Piece::between(median, Rational(1));

    std::vector<Piece> pieces(3);
    pieces[run.shouter - 1] = left;
    std::vector<AgentId> others;
    for (AgentId a : knives.order) {
        if (a != run.shouter) others.push_back(a);
    }
    // Whichever remaining knife is further left points at the middle piece;
    // the median holder, if among them, is indifferent.
    pieces[others[0] - 1] = middle;
    pieces[others[1] - 1] = right;

    for (std::size_t i = 0; i < 3; ++i) {
        const AgentId agent = i + 1;
        run.predicted[i] = agent == run.shouter ? vs[i]->eval(left) : max(vs[i]->eval(middle), vs[i]->eval(right));
    }

    std::vector<std::string> events{
        player(run.shouter) + " shouts at referee position " + run.referee.to_string(),
        "knives at " + run.knives[0].to_string() + ", " + run.knives[1].to_string() + ", " + run.knives[2].to_string() +
            "; " + player(run.median_holder) + " holds the median",
    };
    for (std::size_t i = 0; i < 3; ++i) events.push_back(player(i + 1) + " receives " + pieces[i].to_string());
    run.division = make_division(std::move(pieces), 2, {}, std::move(events));
    return run;
}

CakeDivision stromquist(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3) {
    return stromquist_run(v1, v2, v3).division;
}

}  // namespace fairdiv::cake
