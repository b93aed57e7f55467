#include <cmath>

#include "doctest.h"
#include "fairdiv/cake/procedures.hpp"

using namespace fairdiv;
using namespace fairdiv::cake;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

std::vector<CakeValuation> random_instance(Rng& rng, std::size_t n) {
    std::vector<CakeValuation> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(random_valuation(rng));
    return vs;
}

std::vector<CakeValuation> uniform(std::size_t n) { return std::vector<CakeValuation>(n, CakeValuation::uniform()); }

}  // namespace

TEST_CASE("valuations reject invalid densities") {
    CHECK_THROWS_AS(CakeValuation({r(0), r(1)}, {r(2)}), DomainError);
    CHECK_THROWS_AS(CakeValuation({r(0), r(1, 2), r(1)}, {r(2), r(0)}), DomainError);
    CHECK_THROWS_AS(CakeValuation({r(0), r(1, 2), r(1, 2), r(1)}, {r(1), r(1), r(1)}), DomainError);
    CHECK_THROWS_AS(CakeValuation({r(1, 4), r(1)}, {r(4, 3)}), DomainError);
    const CakeValuation v({r(0), r(1, 4), r(1)}, {r(2), r(2, 3)});
    CHECK(v.eval(Interval{r(0), r(1, 4)}) == r(1, 2));
    CHECK(v.mark(r(0), r(3, 4)) == r(5, 8));
}

TEST_CASE("eval and mark round-trip") {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const CakeValuation v = random_valuation(rng);
        const Rational x = rng.rational(0, 1, 12);
        const Rational rest = v.eval(Interval{x, r(1)});
        const Rational alpha = rest * rng.rational(0, 1, 9);
        const Rational y = v.mark(x, alpha);
        if (alpha.is_zero()) {
            CHECK(y == x);
        } else {
            CHECK(v.eval(Interval{x, y}) == alpha);
        }
        CHECK(v.inverse_cumulative(v.cumulative(x)) == x);
    }
}

TEST_CASE("pieces coalesce and split") {
    const Piece p({{r(1, 2), r(3, 4)}, {r(0), r(1, 4)}, {r(1, 4), r(1, 3)}});
    REQUIRE(p.intervals().size() == 2);
    CHECK(p.intervals()[0] == Interval{r(0), r(1, 3)});
    const auto [left, right] = p.split_at(r(1, 2));
    CHECK(left == Piece::between(r(0), r(1, 3)));
    CHECK(right == Piece::between(r(1, 2), r(3, 4)));
    CHECK_THROWS_AS((void)p.unite(Piece::between(r(1, 4), r(1, 2))), DomainError);
    CHECK_THROWS_AS(make_division({Piece::between(r(0), r(1, 2))}, 0, {}, {}), DomainError);
}

TEST_CASE("procedure names round-trip") {
    for (auto p : all_procedures()) CHECK(parse_procedure(to_string(p)) == p);
    CHECK(all_procedures().size() == 7);
    CHECK_THROWS_AS(parse_procedure("divide-and-conquer"), DomainError);
    CHECK_THROWS_AS(run_procedure(Procedure::Steinhaus, uniform(2)), DomainError);
}

TEST_CASE("cut and choose on a uniform cake") {
    const auto vs = uniform(2);
    const auto d = cut_and_choose(vs[0], vs[1]);
    CHECK(d.pieces[0] == Piece::between(r(1, 2), r(1)));
    CHECK(d.pieces[1] == Piece::between(r(0), r(1, 2)));
    const auto report = verify_division(d, vs);
    CHECK(report.complete);
    CHECK(report.proportional);
    CHECK(report.envy_free);
    CHECK(report.contiguous);
    CHECK(report.cut_count == 1);
}

TEST_CASE("two-player last diminisher is cut and choose") {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto vs = random_instance(rng, 2);
        const auto bk = banach_knaster(vs, true);
        const auto cc = cut_and_choose(vs[0], vs[1]);
        CHECK(bk.pieces == cc.pieces);
    }
}

TEST_CASE("uniform special cases") {
    const auto three = uniform(3);
    const auto sc = selfridge_conway(three[0], three[1], three[2]);
    CHECK(sc.knife_cuts == 2);
    for (const auto& p : sc.pieces) CHECK(p.length() == r(1, 3));

    const auto run = stromquist_run(three[0], three[1], three[2]);
    CHECK(run.referee == r(1, 3));
    for (const auto& k : run.knives) CHECK(k == r(2, 3));
    for (const auto& p : run.division.pieces) CHECK(p.length() == r(1, 3));

    const auto ds = dubins_spanier(uniform(4));
    CHECK(ds.pieces[0] == Piece::between(r(0), r(1, 4)));
    CHECK(ds.cut_count == 3);
}

TEST_CASE("steinhaus labelled case") {
    // Players 2 and 3 only care about the middle third.
    const CakeValuation flat = CakeValuation::uniform();
    const CakeValuation middle = CakeValuation::from_weights({r(0), r(1, 3), r(2, 3), r(1)}, std::vector{r(1), r(8), r(1)});
    const std::vector vs{flat, middle, middle};
    const auto d = steinhaus(vs[0], vs[1], vs[2]);
    const auto report = verify_division(d, vs);
    CHECK(report.proportional);
    CHECK(report.knife_cuts == 3);
    CHECK(report.cut_count <= 3);
    CHECK(d.pieces[0] == Piece::between(r(0), r(1, 3)));
}

TEST_CASE("random instances satisfy the procedure guarantees") {
    Rng rng(2024);
    for (int t = 0; t < 60; ++t) {
        const auto three = random_instance(rng, 3);
        const auto two = std::span(three).first(2);
        const std::size_t n = 2 + rng.index(5);
        const auto many = random_instance(rng, n);

        const auto cc = verify_division(cut_and_choose(two[0], two[1]), two);
        CHECK(cc.envy_free);
        CHECK(cc.cut_count == 1);

        const auto st = verify_division(steinhaus(three[0], three[1], three[2]), three);
        CHECK(st.proportional);
        CHECK(st.cut_count <= 3);

        const auto sc = verify_division(selfridge_conway(three[0], three[1], three[2]), three);
        CHECK(sc.envy_free);
        CHECK(sc.knife_cuts <= 5);

        const auto run = stromquist_run(three[0], three[1], three[2]);
        const auto sq = verify_division(run.division, three);
        CHECK(sq.envy_free);
        CHECK(sq.contiguous);
        CHECK(sq.cut_count == 2);
        for (std::size_t i = 0; i < 3; ++i) CHECK(run.predicted[i] == sq.values.value[i][i]);

        const auto ds = dubins_spanier(many);
        const auto dr = verify_division(ds, many);
        CHECK(dr.proportional);
        CHECK(dr.contiguous);
        CHECK(dr.cut_count == n - 1);
        for (std::size_t last = 0; last < n; ++last) {
            if (ds.pieces[last].intervals().back().hi != Rational(1)) continue;
            for (std::size_t j = 0; j < n; ++j) CHECK(dr.values.value[last][j] <= dr.values.value[last][last]);
        }

        for (bool contiguous : {false, true}) {
            const auto bk = verify_division(banach_knaster(many, contiguous), many);
            CHECK(bk.proportional);
            if (contiguous) CHECK(bk.contiguous);
        }

        const auto ep = verify_division(even_paz(many), many);
        CHECK(ep.proportional);
        CHECK(ep.contiguous);
        CHECK(ep.cut_count == n - 1);
    }
}

TEST_CASE("dubins-spanier first winner gets exactly 1/n") {
    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 + rng.index(6);
        const auto vs = random_instance(rng, n);
        const auto d = dubins_spanier(vs);
        const auto report = verify_division(d, vs);
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (d.pieces[i].leftmost().is_zero()) {
                CHECK(report.values.value[i][i] == r(1, static_cast<std::int64_t>(n)));
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("even-paz marking queries") {
    Rng rng(3);
    for (std::size_t n = 2; n <= 32; ++n) {
        const auto vs = random_instance(rng, n);
        const auto d = even_paz(vs);
        const auto bound = n * static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
        CHECK(d.mark_queries() <= bound);
    }
    const auto seven = uniform(7);
    const auto d = even_paz(seven);
    REQUIRE(!d.query_log.empty());
    bool first_mark_seen = false;
    for (const auto& q : d.query_log) {
        if (q.kind == CakeQuery::Kind::Mark) {
            CHECK(q.answer == r(3, 7));
            first_mark_seen = true;
            break;
        }
    }
    CHECK(first_mark_seen);
}

TEST_CASE("following the recommended strategy secures 1/n") {
    Rng rng(77);
    const std::vector<Procedure> procedures{Procedure::CutAndChoose,  Procedure::Steinhaus,
                                            Procedure::BanachKnaster, Procedure::DubinsSpanier,
                                            Procedure::EvenPaz,       Procedure::SelfridgeConway,
                                            Procedure::Stromquist};
    for (auto procedure : procedures) {
        const std::size_t n = required_players(procedure).value_or(4);
        const CakeValuation honest = random_valuation(rng);
        for (std::size_t i = 0; i < n; ++i) {
            for (int t = 0; t < 10; ++t) {
                auto vs = random_instance(rng, n);
                vs[i] = honest;
                const auto d = run_procedure(procedure, vs);
                CHECK_MESSAGE(honest.eval(d.pieces[i]) * Rational(static_cast<std::int64_t>(n)) >= r(1),
                              to_string(procedure));
            }
        }
    }
}
