// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "fairdiv/axioms.hpp"
#include "fairdiv/cake/procedures.hpp"
#include "fairdiv/cli.hpp"
#include "fairdiv/indivisible.hpp"
#include "fairdiv/negotiation.hpp"

using namespace fairdiv;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }
Rational count(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }

/// Collects failures for one criterion; the first few are printed.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (failures_.size() < 5) failures_.push_back(what);
        ++failed_;
    }
    [[nodiscard]] bool ok() const { return failed_ == 0; }
    [[nodiscard]] std::size_t checks() const { return checks_; }
    [[nodiscard]] std::size_t failed() const { return failed_; }
    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }

private:
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

UtilityVector random_vector(Rng& rng, std::size_t n) {
    UtilityVector u;
    for (std::size_t i = 0; i < n; ++i) u.push_back(rng.rational(-20, 20, 6));
    return u;
}

void ac1(Check& c) {
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 1 + rng.index(6);
        const auto u = random_vector(rng, n);
        const std::string v = format_vector(u);
        c.expect(collective_utility(Cuf::k_rank(1), u) == collective_utility(Cuf::egalitarian(), u), "rank:1 " + v);
        c.expect(collective_utility(Cuf::k_rank(n), u) == collective_utility(Cuf::elitist(), u), "rank:n " + v);
        c.expect(collective_utility(Cuf::owa(UtilityVector(n, r(1))), u) == collective_utility(Cuf::utilitarian(), u),
                 "owa:1..1 " + v);
    }
}

void ac2(Check& c) {
    Rng rng(2);
    std::vector<std::pair<UtilityVector, UtilityVector>> suite;
    while (suite.size() < 100) {
        const std::size_t n = 2 + rng.index(5);
        UtilityVector u, v;
        for (std::size_t i = 0; i < n; ++i) {
            u.emplace_back(rng.uniform(0, 20));
            v.emplace_back(rng.uniform(0, 20));
        }
        if (leximin_compare(u, v) != SwoVerdict::Indifferent) suite.emplace_back(u, v);
    }
    std::optional<Rational> witness;
    for (std::int64_t den : {100, 1000, 10000, 100000}) {
        const Rational alpha = r(1, den);
        bool all = true;
        for (const auto& [u, v] : suite) {
            const auto n = u.size();
            const Rational a = collective_utility(Cuf::geometric_owa(alpha, n), u);
            const Rational b = collective_utility(Cuf::geometric_owa(alpha, n), v);
            const SwoVerdict owa = a < b ? SwoVerdict::StrictlyLess : (b < a ? SwoVerdict::StrictlyGreater : SwoVerdict::Indifferent);
            all = all && owa == leximin_compare(u, v);
        }
        if (all) {
            witness = alpha;
            break;
        }
    }
    c.expect(witness.has_value(), "no sampled alpha <= 1/100 reproduces leximin on the suite");
}

void ac3(Check& c) {
    const std::size_t samples = 10000;
    struct Cell {
        Swo swo;
        Axiom axiom;
    };
    const std::vector<Cell> holds{
        {Swo::from_cuf(Cuf::utilitarian()), Axiom::ZeroIndependence},
        {Swo::from_cuf(Cuf::utilitarian()), Axiom::Separability},
        {Swo::from_cuf(Cuf::utilitarian()), Axiom::PigouDalton},
        {Swo::from_cuf(Cuf::nash()), Axiom::ScaleIndependence},
        {Swo::from_cuf(Cuf::k_rank(1)), Axiom::CommonPace},
        {Swo::from_cuf(Cuf::k_rank(2)), Axiom::CommonPace},
        {Swo::from_cuf(Cuf::k_rank(3)), Axiom::CommonPace},
        {Swo::leximin(), Axiom::Separability},
        {Swo::leximin(), Axiom::PigouDaltonStrict},
    };
    std::uint64_t seed = 300;
    for (const auto& cell : holds) {
        // k-rank needs at least k agents.
        const std::size_t min_n = cell.swo.cuf() && cell.swo.cuf()->kind == Cuf::Kind::KRank ? std::max<std::size_t>(2, cell.swo.cuf()->k) : 2;
        const auto s = survey_axiom(cell.swo, cell.axiom, samples, ++seed, {}, min_n, 6);
        c.expect(s.checked == samples && s.violations == 0, cell.swo.name() + " " + to_string(cell.axiom));
    }
    AxiomWitness own;
    own.u = {r(1), r(7), r(8)};
    own.v = {r(1), r(3), r(5)};
    own.w = {r(10), r(0), r(0)};
    const std::vector fixed{own};
    const auto egal = survey_axiom(Swo::from_cuf(Cuf::egalitarian()), Axiom::Separability, samples, ++seed, fixed);
    c.expect(egal.violations > 0, "egal separability: no counterexample");
    c.expect(egal.first_violation && egal.first_violation->lhs == UtilityVector{r(11), r(7), r(8)} &&
                 egal.first_violation->rhs == UtilityVector{r(11), r(3), r(5)},
             "egal separability: fixed witness not reported first");
}

std::vector<cake::CakeValuation> random_cake(Rng& rng, std::size_t n) {
    std::vector<cake::CakeValuation> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(cake::random_valuation(rng));
    return vs;
}

void ac4(Check& c) {
    using cake::Procedure;
    Rng rng(4);
    for (auto procedure : cake::all_procedures()) {
        const std::string name = cake::to_string(procedure);
        for (int t = 0; t < 500; ++t) {
            const std::size_t n = cake::required_players(procedure).value_or(2 + rng.index(5));
            const auto vs = random_cake(rng, n);
            const std::string at = name + " #" + std::to_string(t);
            for (bool contiguous : {false, true}) {
                if (contiguous && procedure != Procedure::BanachKnaster) continue;
                const auto d = cake::run_procedure(procedure, vs, contiguous);
                const auto rep = cake::verify_division(d, vs);
                c.expect(rep.complete && rep.proportional, at + " proportional");
                switch (procedure) {
                    case Procedure::CutAndChoose:
                        c.expect(rep.envy_free && rep.contiguous && rep.cut_count == 1 && rep.knife_cuts == 1, at);
                        break;
                    case Procedure::Steinhaus:
                        c.expect(rep.cut_count <= 3 && rep.knife_cuts <= 3, at + " cuts");
                        break;
                    case Procedure::BanachKnaster:
                        if (contiguous) c.expect(rep.contiguous && rep.cut_count == n - 1, at + " contiguous");
                        break;
                    case Procedure::DubinsSpanier:
                        c.expect(rep.contiguous && rep.cut_count == n - 1 && rep.knife_cuts == n - 1, at + " cuts");
                        break;
                    case Procedure::EvenPaz:
                        c.expect(rep.contiguous && rep.cut_count == n - 1, at + " cuts");
                        break;
                    case Procedure::SelfridgeConway:
                        c.expect(rep.envy_free && rep.cut_count <= 5 && rep.knife_cuts <= 5, at);
                        break;
                    case Procedure::Stromquist:
                        c.expect(rep.envy_free && rep.contiguous && rep.cut_count == 2 && rep.knife_cuts == 2, at);
                        break;
                }
            }
        }
    }
    for (std::size_t n = 2; n <= 32; ++n) {
        const auto vs = random_cake(rng, n);
        const auto d = cake::even_paz(vs);
        const auto bound = n * static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
        c.expect(d.mark_queries() <= bound, "even-paz marks n=" + std::to_string(n));
        const auto rep = cake::verify_division(d, vs);
        c.expect(rep.proportional && rep.contiguous, "even-paz n=" + std::to_string(n));
    }
}

void ac5(Check& c) {
    Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + rng.index(7);
        const auto vs = random_cake(rng, n);
        const auto d = cake::dubins_spanier(vs);
        std::size_t first = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (d.pieces[i].leftmost().is_zero()) first = i;
        }
        c.expect(first < n && vs[first].eval(d.pieces[first]) == r(1, static_cast<std::int64_t>(n)),
                 "instance " + std::to_string(t));
    }
}

AllocationProblem random_problem(Rng& rng, std::size_t max_agents, std::size_t max_goods) {
    const std::size_t n = 1 + rng.index(max_agents);
    const std::size_t m = 1 + rng.index(max_goods);
    AllocationProblem p;
    std::vector<Good> goods;
    for (std::size_t g = 0; g < m; ++g) goods.push_back(std::string(1, static_cast<char>('a' + g)));
    p.goods = Bundle(goods.begin(), goods.end());
    for (std::size_t i = 1; i <= n; ++i) {
        XorBid bid{i, {}};
        std::set<Bundle> seen;
        const std::size_t atoms = rng.index(6);
        for (std::size_t a = 0; a < atoms; ++a) {
            Bundle b;
            for (const auto& g : goods) {
                if (rng.uniform(0, 2) == 0) b.insert(g);
            }
            if (seen.insert(b).second) bid.atoms.push_back({b, rng.rational(0, 30, 4)});
        }
        p.bids.push_back(std::move(bid));
    }
    return p;
}

bool satisfies_constraints(const AllocationProblem& p, const Assignment& a) {
    if (a.size() != p.agent_count()) return false;
    Bundle used;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        if (*a[i] >= p.bids[i].atoms.size()) return false;
        for (const auto& g : p.bids[i].atoms[*a[i]].bundle) {
            if (!used.insert(g).second) return false;
        }
    }
    return true;
}

void ac6(Check& c) {
    Rng rng(6);
    const std::vector criteria{Criterion::of(Cuf::utilitarian()), Criterion::of(Cuf::egalitarian()),
                               Criterion::of(Cuf::elitist()), Criterion::of(Cuf::nash()), Criterion::leximin()};
    for (int t = 0; t < 200; ++t) {
        auto p = random_problem(rng, 4, 6);
        for (const auto& criterion : criteria) {
            p.criterion = criterion;
            const auto fast = solve(p);
            const auto slow = brute_force(p);
            const std::string at = "instance " + std::to_string(t) + " " + criterion.name();
            c.expect(fast.certificate.kind == Certificate::Kind::Optimal, at + " certificate");
            c.expect(satisfies_constraints(p, fast.assignment), at + " feasibility");
            c.expect(fast.objective == slow.objective, at + " objective");
            c.expect(fast.utilities == induced_utilities(p, fast.assignment), at + " utilities");
            if (criterion.is_leximin()) {
                c.expect(leximin_compare(fast.utilities, slow.utilities) == SwoVerdict::Indifferent, at + " leximin");
            }
        }
    }
}

void ac7(Check& c) {
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        auto p = random_problem(rng, 3, 5);
        p.criterion = Criterion::of(Cuf::utilitarian());
        const auto best = brute_force(p);
        std::vector<UtilityVector> feasible;
        for (const auto& f : enumerate_feasible(p)) feasible.push_back(f.utilities);
        c.expect(pareto_efficient(best.utilities, feasible), "utilitarian optimum not Pareto efficient");
        c.expect(leximin_optimal_is_pareto(p), "leximin optimum not Pareto/egalitarian optimal");
    }

    const Swo util = Swo::from_cuf(Cuf::utilitarian());
    for (std::size_t n = 1; n <= 4; ++n) {
        const std::uint64_t vectors = 1ULL << n;
        for (std::uint64_t a = 0; a < vectors; ++a) {
            for (std::uint64_t b = 0; b < vectors; ++b) {
                UtilityVector u, v;
                for (std::size_t i = 0; i < n; ++i) {
                    u.emplace_back(static_cast<std::int64_t>(a >> i & 1));
                    v.emplace_back(static_cast<std::int64_t>(b >> i & 1));
                }
                c.expect(util(u, v) == leximin_compare(u, v), "dichotomous " + format_vector(u) + " " + format_vector(v));
            }
        }
    }

    for (int t = 0; t < 500; ++t) {
        const std::size_t m = 1 + rng.index(6);
        Bundle goods;
        for (std::size_t g = 0; g < m; ++g) goods.insert("g" + std::to_string(g));
        std::vector<BundleValuation> vals;
        for (int i = 0; i < 2; ++i) {
            std::map<Good, Rational> w;
            for (const auto& g : goods) w[g] = rng.rational(0, 10, 3);
            vals.push_back(BundleValuation::additive(std::move(w)));
        }
        std::vector<Bundle> bundles(2);
        for (const auto& g : goods) bundles[rng.index(2)].insert(g);
        const auto vm = value_matrix(vals, GoodsAllocation(goods, bundles));
        c.expect(envy_free(vm) == proportional(vm), "two-agent additive instance " + std::to_string(t));
    }
}

BundleValuation random_valuation(Rng& rng, const Bundle& goods) {
    if (rng.coin()) {
        std::map<Good, Rational> w;
        for (const auto& g : goods) w[g] = rng.rational(0, 10, 4);
        return BundleValuation::additive(std::move(w));
    }
    const std::vector<Good> list(goods.begin(), goods.end());
    std::map<Bundle, Rational> entries;
    for (std::uint64_t mask = 0; mask < (1ULL << list.size()); ++mask) {
        Bundle b;
        for (std::size_t g = 0; g < list.size(); ++g) {
            if (mask >> g & 1) b.insert(list[g]);
        }
        entries[b] = rng.rational(0, 15, 4);
    }
    return BundleValuation::table(std::move(entries));
}

GoodsAllocation random_allocation(Rng& rng, const Bundle& goods, std::size_t n) {
    std::vector<Bundle> bundles(n);
    for (const auto& g : goods) bundles[rng.index(n)].insert(g);
    return GoodsAllocation(goods, std::move(bundles));
}

void ac8(Check& c) {
    Rng rng(8);
    std::size_t deals = 0, improving = 0;
    while (deals < 500) {
        const std::size_t n = 2 + rng.index(3);
        const std::size_t m = 1 + rng.index(5);
        Bundle goods;
        for (std::size_t g = 0; g < m; ++g) goods.insert("g" + std::to_string(g));
        std::vector<BundleValuation> vals;
        for (std::size_t i = 0; i < n; ++i) vals.push_back(random_valuation(rng, goods));
        const auto before = random_allocation(rng, goods, n);
        const auto after = random_allocation(rng, goods, n);
        if (before == after) continue;
        ++deals;
        const Deal deal(before, after);
        const bool ir = is_ir(deal, vals);
        c.expect(payment_exists(deal, vals) == ir, "deal " + std::to_string(deals));
        if (!ir) continue;
        ++improving;
        const auto p = make_payments(deal, vals, PaymentPolicy::EqualSurplus);
        const auto changes = valuation_changes(deal, vals);
        const Rational share = welfare_gain(deal, vals) / count(n);
        for (std::size_t i = 0; i < n; ++i) {
            c.expect(changes[i] - p.payments()[i] == share, "net change of agent " + std::to_string(i + 1));
        }
    }
    c.expect(improving > 50 && improving < 450, "sample does not exercise both directions");
}

void ac9(Check& c) {
    const Bundle goods{"a", "b", "c", "d", "e"};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(9000 + seed);
        std::vector<BundleValuation> vals;
        for (int i = 0; i < 3; ++i) vals.push_back(random_valuation(rng, goods));
        const auto initial = random_allocation(rng, goods, 3);
        const auto state = run_negotiation(initial, vals, DealGenerator::AnyImproving, seed);
        auto problem = exhaustive_problem(goods, vals, Criterion::of(Cuf::utilitarian()));
        problem.complete = true;
        const std::string at = "seed " + std::to_string(seed);
        c.expect(utilitarian_welfare(vals, state.allocation) == brute_force(problem).objective, at + " optimum");
        Rational last = utilitarian_welfare(vals, initial);
        std::vector<Rational> balance(3);
        for (const auto& step : state.trace) {
            c.expect(step.welfare_before == last && last < step.welfare_after, at + " welfare increase");
            last = step.welfare_after;
            Rational total;
            for (std::size_t i = 0; i < 3; ++i) {
                balance[i] += step.payments.payments()[i];
                total += balance[i];
            }
            c.expect(total.is_zero(), at + " money conservation");
        }
        c.expect(balance == state.balance, at + " balance");
    }
}

void ac10(Check& c) {
    const std::string dir = FAIRDIV_SCENARIO_DIR;
    std::vector<std::vector<std::string>> commands{
        {"welfare", "eval", "--cuf", "nash", "--vector", "4,4"},
        {"welfare", "axioms", "--swo", "egal", "--axiom", "separability", "--samples", "300", "--seed", "11",
         "--scenario", dir + "/welfare_separability.json"},
        {"alloc", "solve", "--scenario", dir + "/alloc_example.json"},
        {"alloc", "oracle", "--scenario", dir + "/alloc_example.json"},
    };
    for (auto p : cake::all_procedures()) {
        const std::string file = cake::required_players(p) == std::size_t{2} ? "/cake_uniform.json" : "/cake_three.json";
        commands.push_back({"cake", "run", "--procedure", cake::to_string(p), "--scenario", dir + file, "--verify", "--log"});
    }
    for (const char* generator : {"any", "one-good", "swap"}) {
        commands.push_back({"negotiate", "run", "--scenario", dir + "/negotiation.json", "--generator", generator,
                            "--seed", "42"});
    }
    for (const auto& base : commands) {
        for (const char* format : {"table", "json"}) {
            auto args = base;
            args.insert(args.end(), {"--format", format});
            std::string first;
            for (int rep = 0; rep < 3; ++rep) {
                std::ostringstream out, err;
                const int code = cli::run(args, out, err);
                std::string label = base[0] + " " + base[1];
                for (std::size_t k = 2; k < base.size(); ++k) {
                    if (base[k - 1] == "--procedure" || base[k - 1] == "--generator") label += " " + base[k];
                }
                c.expect(code == 0, label + " exit " + std::to_string(code) + ": " + err.str());
                if (rep == 0) {
                    first = out.str();
                    c.expect(!first.empty(), label + " empty report");
                } else {
                    c.expect(out.str() == first, label + " (" + format + ") differs between runs");
                }
            }
        }
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* id;
        const char* title;
        std::function<void(Check&)> body;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "CUF identities", ac1},
        {"AC2", "geometric OWA approximates leximin", ac2},
        {"AC3", "axiom table", ac3},
        {"AC4", "cake procedure guarantees", ac4},
        {"AC5", "Dubins-Spanier first piece is exactly 1/n", ac5},
        {"AC6", "branch-and-bound agrees with brute force", ac6},
        {"AC7", "efficiency and fairness properties", ac7},
        {"AC8", "payments exist iff welfare rises", ac8},
        {"AC9", "negotiation converges to the optimum", ac9},
        {"AC10", "CLI determinism", ac10},
    };
    bool all = true;
    for (const auto& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.body(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << (check.ok() ? "PASS " : "FAIL ") << criterion.id << " " << criterion.title << " ("
                  << check.checks() << " checks, " << ms << " ms)\n";
        for (const auto& f : check.failures()) std::cout << "    " << f << "\n";
        if (!check.ok()) std::cout << "    " << check.failed() << " failed checks\n";
        all = all && check.ok();
    }
    return all ? 0 : 1;
}
