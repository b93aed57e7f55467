#include "doctest.h"
#include "fairdiv/random.hpp"
#include "fairdiv/welfare.hpp"

using namespace fairdiv;

namespace {

UtilityVector vec(std::initializer_list<std::int64_t> xs) {
    UtilityVector u;
    for (auto x : xs) u.emplace_back(x);
    return u;
}

UtilityVector random_vector(Rng& rng, std::size_t n) {
    UtilityVector u;
    for (std::size_t k = 0; k < n; ++k) u.push_back(rng.rational(-20, 20, 7));
    return u;
}

}  // namespace

TEST_CASE("collective utility functions") {
    CHECK(collective_utility(Cuf::utilitarian(), vec({4, 4})) == Rational(8));
    CHECK(collective_utility(Cuf::utilitarian(), vec({2, 6})) == Rational(8));
    CHECK(collective_utility(Cuf::nash(), vec({4, 4})) == Rational(16));
    CHECK(collective_utility(Cuf::nash(), vec({2, 6})) == Rational(12));
    CHECK(collective_utility(Cuf::egalitarian(), vec({10, 25, 28})) == Rational(10));
    CHECK(collective_utility(Cuf::elitist(), vec({10, 25, 28})) == Rational(28));
    CHECK(collective_utility(Cuf::median_rank(3), vec({10, 25, 28})) == Rational(25));
    CHECK(collective_utility(Cuf::owa({Rational(3), Rational(2), Rational(1)}), vec({28, 10, 25})) ==
          Rational(30 + 50 + 28));
    CHECK(collective_utility(Cuf::nash(), vec({-2, 3})) == Rational(-6));

    CHECK_THROWS_AS(collective_utility(Cuf::k_rank(0), vec({1, 2})), DomainError);
    CHECK_THROWS_AS(collective_utility(Cuf::k_rank(3), vec({1, 2})), DomainError);
    CHECK_THROWS_AS(collective_utility(Cuf::owa({Rational(1)}), vec({1, 2})), DomainError);
}

TEST_CASE("rank and OWA identities hold exactly") {
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        const auto n = 1 + rng.index(6);
        const auto u = random_vector(rng, n);
        CHECK(collective_utility(Cuf::k_rank(1), u) == collective_utility(Cuf::egalitarian(), u));
        CHECK(collective_utility(Cuf::k_rank(n), u) == collective_utility(Cuf::elitist(), u));
        CHECK(collective_utility(Cuf::owa(std::vector<Rational>(n, Rational(1))), u) ==
              collective_utility(Cuf::utilitarian(), u));
    }
}

TEST_CASE("CUF names round-trip") {
    for (const char* name : {"util", "egal", "elit", "rank:2", "nash", "owa:1,1/2,1/4"}) {
        CHECK(Cuf::parse(name).name() == name);
    }
    CHECK(Cuf::parse("utilitarian") == Cuf::utilitarian());
    CHECK_THROWS_AS(Cuf::parse("rank:x"), DomainError);
    CHECK_THROWS_AS(Cuf::parse("owa:0.5,1"), DomainError);
    CHECK_THROWS_AS(Cuf::parse("median"), DomainError);
}

TEST_CASE("leximin comparison") {
    CHECK(leximin_compare(vec({1, 3, 5}), vec({1, 7, 8})) == SwoVerdict::StrictlyLess);
    CHECK(leximin_compare(vec({2, 6}), vec({6, 2})) == SwoVerdict::Indifferent);
    CHECK(leximin_compare(vec({1, 7, 8}), vec({1, 3, 5})) == SwoVerdict::StrictlyGreater);
    CHECK_THROWS_AS(leximin_compare(vec({1}), vec({1, 2})), DomainError);

    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        const auto n = 1 + rng.index(5);
        const auto u = random_vector(rng, n);
        const auto v = random_vector(rng, n);
        const auto egal_u = collective_utility(Cuf::egalitarian(), u);
        const auto egal_v = collective_utility(Cuf::egalitarian(), v);
        if (egal_u < egal_v) CHECK(leximin_compare(u, v) == SwoVerdict::StrictlyLess);
        if (leximin_compare(u, v) == SwoVerdict::StrictlyLess) CHECK(egal_u <= egal_v);
    }
}

TEST_CASE("social welfare orderings by name") {
    const Swo nash = Swo::parse("nash");
    CHECK(nash.domain() == Swo::Domain::Positive);
    CHECK(nash(vec({2, 6}), vec({4, 4})) == SwoVerdict::StrictlyLess);
    const Swo util = Swo::parse("util");
    CHECK(util(vec({2, 6}), vec({4, 4})) == SwoVerdict::Indifferent);
    CHECK(Swo::parse("lex").name() == "leximin");
    CHECK_FALSE(Swo::leximin().cuf().has_value());
    CHECK_THROWS_AS(Swo::parse("bogus"), DomainError);
}

TEST_CASE("Pareto dominance and efficiency") {
    CHECK(pareto_dominates(vec({1, 1}), vec({1, 2})));
    CHECK_FALSE(pareto_dominates(vec({1, 2}), vec({2, 1})));
    CHECK_FALSE(pareto_dominates(vec({1, 2}), vec({1, 2})));
    CHECK_THROWS_AS(pareto_dominates(vec({1}), vec({1, 2})), DomainError);

    const std::vector<UtilityVector> feasible{vec({1, 1}), vec({1, 2})};
    CHECK_FALSE(pareto_efficient(vec({1, 1}), feasible));
    CHECK(pareto_efficient(vec({1, 2}), feasible));
    CHECK(pareto_efficient(vec({3, 3}), std::vector<UtilityVector>{vec({3, 3})}));
    CHECK_THROWS_AS(pareto_efficient(vec({9, 9}), feasible), DomainError);

    // A utilitarian maximum is never dominated.
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        std::vector<UtilityVector> set;
        for (int k = 0; k < 8; ++k) set.push_back(random_vector(rng, 3));
        const UtilityVector* best = &set.front();
        for (const auto& u : set) {
            if (collective_utility(Cuf::utilitarian(), *best) < collective_utility(Cuf::utilitarian(), u)) best = &u;
        }
        CHECK(pareto_efficient(*best, set));
    }
}

TEST_CASE("proportionality and envy-freeness on goods") {
    const Bundle goods{"a", "b", "c", "d"};
    const auto additive = BundleValuation::additive(
        {{"a", Rational(5)}, {"b", Rational(23)}, {"c", Rational(10)}, {"d", Rational(1)}});
    // Agent 2 values the full set at 100 and is additive otherwise.
    const std::vector<BundleValuation> example{
        BundleValuation::per_item(Rational(10)),
        BundleValuation("example", [additive](const Bundle& b) { return b.size() == 4 ? Rational(100) : additive(b); }),
        BundleValuation::constant(Rational(25))};

    const GoodsAllocation A(goods, {{"c"}, {"a", "b"}, {"d"}});
    const auto m = value_matrix(example, A);
    CHECK(m.full_value == UtilityVector{Rational(40), Rational(100), Rational(25)});
    CHECK_FALSE(proportional(m));

    const auto everything = value_matrix(example, GoodsAllocation::all_to_first(goods, 3));
    CHECK_FALSE(proportional(everything));

    // Discarding every good leaves nobody envious.
    const std::vector<Bundle> empty(3);
    CHECK(envy_free(value_matrix(example, empty, goods)));

    const std::vector<BundleValuation> two{BundleValuation::per_item(Rational(1)), BundleValuation::per_item(Rational(1))};
    CHECK_FALSE(envy_free(value_matrix(two, GoodsAllocation(Bundle{"g"}, {{"g"}, {}}))));
    CHECK_FALSE(envy_free(value_matrix(two, GoodsAllocation(Bundle{"g"}, {{}, {"g"}}))));
}

TEST_CASE("degrees of envy") {
    ValueMatrix m;
    m.value = {{Rational(1), Rational(3)}, {Rational(0), Rational(2)}};
    m.full_value = {Rational(4), Rational(2)};
    CHECK(degree_of_envy(m, EnvyMeasureSpec::parse("pos/max/sum")) == Rational(2));
    CHECK(degree_of_envy(m, EnvyMeasureSpec::parse("pos/sum/sum")) == Rational(2));
    CHECK(degree_of_envy(m, EnvyMeasureSpec::parse("bool/max/sum")) == Rational(1));
    CHECK(degree_of_envy(m, EnvyMeasureSpec::parse("total/sum/sum")) == Rational(2 - 2));
    CHECK(degree_of_envy(m, EnvyMeasureSpec::parse("total/max/max")) == Rational(2));

    ValueMatrix negative;
    negative.value = {{Rational(5), Rational(1)}, {Rational(1), Rational(5)}};
    negative.full_value = {Rational(6), Rational(6)};
    CHECK(degree_of_envy(negative, EnvyMeasureSpec::parse("total/sum/sum")) == Rational(-8));

    CHECK(EnvyMeasureSpec::all().size() == 12);
    for (const auto& spec : EnvyMeasureSpec::all()) CHECK(EnvyMeasureSpec::parse(spec.name()).name() == spec.name());
    CHECK_THROWS_AS(EnvyMeasureSpec::parse("pos/avg/sum"), DomainError);

    // Positive and boolean measures vanish exactly on envy-free allocations.
    Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        ValueMatrix r;
        const auto n = 2 + rng.index(3);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < n; ++j) row.emplace_back(rng.uniform(0, 3));
            r.value.push_back(row);
            r.full_value.emplace_back(12);
        }
        for (const auto& spec : EnvyMeasureSpec::all()) {
            if (spec.pairwise == EnvyMeasureSpec::Pairwise::Total) continue;
            CHECK((degree_of_envy(r, spec).is_zero()) == envy_free(r));
        }
    }
}

TEST_CASE("dichotomous utilities: utilitarian agrees with leximin") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::size_t count = std::size_t{1} << n;
        auto make = [n](std::size_t bits) {
            UtilityVector u;
            for (std::size_t k = 0; k < n; ++k) u.emplace_back(static_cast<std::int64_t>((bits >> k) & 1));
            return u;
        };
        const Swo util = Swo::from_cuf(Cuf::utilitarian());
        for (std::size_t a = 0; a < count; ++a) {
            for (std::size_t b = 0; b < count; ++b) CHECK(util(make(a), make(b)) == leximin_compare(make(a), make(b)));
        }
    }
}

TEST_CASE("geometric OWA approaches leximin") {
    const auto u = vec({1, 5, 9});
    const auto v = vec({2, 2, 2});
    CHECK(leximin_compare(u, v) == SwoVerdict::StrictlyLess);
    // Weight 1 is utilitarian, which prefers u.
    CHECK(Swo::from_cuf(Cuf::geometric_owa(Rational(1), 3))(u, v) == SwoVerdict::StrictlyGreater);
    CHECK(Swo::from_cuf(Cuf::geometric_owa(Rational(1, 100), 3))(u, v) == SwoVerdict::StrictlyLess);
}
