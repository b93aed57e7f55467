#include "fairdiv/indivisible.hpp"

#include <algorithm>
#include <map>

namespace fairdiv {

namespace {

using Mask = std::uint64_t;
using Key = std::vector<Rational>;

/// Goods and atoms encoded as bit masks, plus criterion helpers shared by the
/// search and the enumerators.
class Encoded {
public:
    explicit Encoded(const AllocationProblem& problem) : problem_(problem) {
        validate(problem);
        if (problem.goods.size() > 64) throw DomainError("indivisible: at most 64 goods are supported");
        std::map<Good, std::size_t> index;
        for (const auto& g : problem.goods) index.emplace(g, index.size());
        all_ = problem.goods.size() == 64 ? ~Mask{0} : (Mask{1} << problem.goods.size()) - 1;
        for (const auto& bid : problem.bids) {
            std::vector<Mask> masks;
            for (const auto& atom : bid.atoms) {
                Mask m = 0;
                for (const auto& g : atom.bundle) m |= Mask{1} << index.at(g);
                masks.push_back(m);
                if (atom.utility.sign() < 0) has_negative_ = true;
            }
            masks_.push_back(std::move(masks));
        }
        // Surface k-rank / OWA length errors before searching.
        (void)key(UtilityVector(problem.agent_count()), Assignment(problem.agent_count()));
    }

    [[nodiscard]] std::size_t agents() const { return problem_.agent_count(); }
    [[nodiscard]] Mask all() const { return all_; }
    [[nodiscard]] const std::vector<Mask>& masks(std::size_t agent_index) const { return masks_[agent_index]; }
    [[nodiscard]] const Rational& utility(std::size_t agent_index, std::size_t atom) const {
        return problem_.bids[agent_index].atoms[atom].utility;
    }

    [[nodiscard]] Key key(const UtilityVector& u, const Assignment& assignment) const {
        const auto& criterion = problem_.criterion;
        if (criterion.is_leximin()) return ordered(u);
        const Cuf& cuf = *criterion.cuf;
        if (cuf.kind == Cuf::Kind::Nash && problem_.nash_unassigned == NashUnassigned::Exclude) {
            Rational product(1);
            for (std::size_t i = 0; i < u.size(); ++i) {
                if (assignment[i]) product *= u[i];
            }
            return {product};
        }
        return {collective_utility(cuf, u)};
    }

    [[nodiscard]] Rational objective(const UtilityVector& u, const Assignment& assignment) const {
        if (problem_.criterion.is_leximin()) return *std::min_element(u.begin(), u.end());
        return key(u, assignment).front();
    }

    /// Whether the criterion is monotone in every agent's utility, so that
    /// per-agent optimistic utilities give an admissible bound.
    [[nodiscard]] bool boundable() const {
        const auto& criterion = problem_.criterion;
        if (criterion.is_leximin()) return true;
        const Cuf& cuf = *criterion.cuf;
        switch (cuf.kind) {
            case Cuf::Kind::Nash:
                return !has_negative_ && problem_.nash_unassigned == NashUnassigned::Zero;
            case Cuf::Kind::Owa:
                return std::all_of(cuf.weights.begin(), cuf.weights.end(), [](const Rational& w) { return w.sign() >= 0; });
            default:
                return true;
        }
    }

    [[nodiscard]] bool feasible(Mask used) const { return !problem_.complete || used == all_; }

    [[nodiscard]] UtilityVector utilities(const Assignment& assignment) const {
        UtilityVector u(agents());
        for (std::size_t i = 0; i < agents(); ++i) {
            if (assignment[i]) u[i] = utility(i, *assignment[i]);
        }
        return u;
    }

    /// Visits every feasible assignment in lexicographic order.
    template <typename Visit>
    void enumerate(Visit&& visit) const {
        Assignment assignment(agents());
        enumerate_from(0, 0, assignment, visit);
    }

    [[nodiscard]] std::uint64_t enumeration_size() const {
        std::uint64_t total = 1;
        for (const auto& m : masks_) {
            total *= m.size() + 1;
            if (total > kBruteForceGuard) {
                throw GuardExceeded("brute force: more than " + std::to_string(kBruteForceGuard) +
                                    " assignments (product of atoms + 1 over agents)");
            }
        }
        return total;
    }

private:
    template <typename Visit>
    void enumerate_from(std::size_t k, Mask used, Assignment& assignment, Visit& visit) const {
        if (k == agents()) {
            if (feasible(used)) visit(assignment);
            return;
        }
        assignment[k].reset();
        enumerate_from(k + 1, used, assignment, visit);
        for (std::size_t a = 0; a < masks_[k].size(); ++a) {
            if (masks_[k][a] & used) continue;
            assignment[k] = a;
            enumerate_from(k + 1, used | masks_[k][a], assignment, visit);
        }
        assignment[k].reset();
    }

    const AllocationProblem& problem_;
    std::vector<std::vector<Mask>> masks_;
    Mask all_ = 0;
    bool has_negative_ = false;
};

class Search {
public:
    Search(const Encoded& encoded, const SolveOptions& options)
        : enc_(encoded), options_(options), prune_(encoded.boundable()), assignment_(encoded.agents()),
          utilities_(encoded.agents()) {}

    void run() { visit(0, 0); }

    [[nodiscard]] bool truncated() const { return truncated_; }
    [[nodiscard]] std::size_t nodes() const { return nodes_; }
    [[nodiscard]] const std::optional<Assignment>& best() const { return best_; }

    /// Optimistic utility vector: fixed agents keep theirs, the others get
    /// their best atom compatible with `used` (or 0).
    [[nodiscard]] UtilityVector optimistic(std::size_t k, Mask used) const {
        UtilityVector ub = utilities_;
        for (std::size_t j = k; j < enc_.agents(); ++j) {
            Rational top(0);
            const auto& masks = enc_.masks(j);
            for (std::size_t a = 0; a < masks.size(); ++a) {
                if (!(masks[a] & used) && top < enc_.utility(j, a)) top = enc_.utility(j, a);
            }
            ub[j] = top;
        }
        return ub;
    }

private:
    [[nodiscard]] bool coverable(std::size_t k, Mask used) const {
        Mask reach = used;
        for (std::size_t j = k; j < enc_.agents(); ++j) {
            for (Mask m : enc_.masks(j)) {
                if (!(m & used)) reach |= m;
            }
        }
        return reach == enc_.all();
    }

    void visit(std::size_t k, Mask used) {
        if (truncated_) return;
        if (options_.node_limit != 0 && nodes_ >= options_.node_limit) {
            truncated_ = true;
            return;
        }
        ++nodes_;
        if (k == enc_.agents()) {
            if (!enc_.feasible(used)) return;
            Key key = enc_.key(utilities_, assignment_);
            if (!best_ || best_key_ < key) {
                best_ = assignment_;
                best_key_ = std::move(key);
            }
            return;
        }
        if (prune_ && best_) {
            Assignment optimistic_assignment = assignment_;
            if (enc_.key(optimistic(k, used), optimistic_assignment) < best_key_) return;
        }
        if (!enc_.feasible(used) && !coverable(k, used)) return;

        assignment_[k].reset();
        utilities_[k] = Rational(0);
        visit(k + 1, used);
        const auto& masks = enc_.masks(k);
        for (std::size_t a = 0; a < masks.size(); ++a) {
            if (masks[a] & used) continue;
            assignment_[k] = a;
            utilities_[k] = enc_.utility(k, a);
            visit(k + 1, used | masks[a]);
        }
        assignment_[k].reset();
        utilities_[k] = Rational(0);
    }

    const Encoded& enc_;
    const SolveOptions& options_;
    bool prune_;
    Assignment assignment_;
    UtilityVector utilities_;
    std::optional<Assignment> best_;
    Key best_key_;
    std::size_t nodes_ = 0;
    bool truncated_ = false;
};

SolveResult make_result(const Encoded& enc, Assignment assignment, std::size_t nodes) {
    SolveResult r;
    r.utilities = enc.utilities(assignment);
    r.objective = enc.objective(r.utilities, assignment);
    r.assignment = std::move(assignment);
    r.nodes = nodes;
    return r;
}

SolveResult infeasible(std::size_t agents, std::size_t nodes) {
    SolveResult r;
    r.assignment.assign(agents, std::nullopt);
    r.utilities.assign(agents, Rational(0));
    r.certificate.kind = Certificate::Kind::Infeasible;
    r.nodes = nodes;
    return r;
}

}  // namespace

Criterion Criterion::parse(std::string_view name) {
    if (name == "leximin" || name == "lex") return leximin();
    return of(Cuf::parse(name));
}

std::string Criterion::name() const { return cuf ? cuf->name() : "leximin"; }

std::string to_string(Certificate::Kind kind) {
    switch (kind) {
        case Certificate::Kind::Optimal: return "optimal";
        case Certificate::Kind::Bounded: return "bounded";
        case Certificate::Kind::Infeasible: return "infeasible";
    }
    return "?";
}

void validate(const AllocationProblem& problem) {
    if (problem.bids.empty()) throw DomainError("allocation problem: at least one agent is required");
    for (std::size_t k = 0; k < problem.bids.size(); ++k) {
        const auto& bid = problem.bids[k];
        if (bid.agent != k + 1) {
            throw DomainError("allocation problem: bid " + std::to_string(k + 1) + " is labelled agent " +
                              std::to_string(bid.agent) + "; agents must be numbered 1..n in order");
        }
        std::set<Bundle> seen;
        for (const auto& atom : bid.atoms) {
            for (const auto& g : atom.bundle) {
                if (!problem.goods.contains(g)) {
                    throw DomainError("allocation problem: agent " + std::to_string(bid.agent) + " bids on unknown good '" +
                                      g + "'");
                }
            }
            if (!seen.insert(atom.bundle).second) {
                throw DomainError("allocation problem: agent " + std::to_string(bid.agent) + " lists bundle " +
                                  format_bundle(atom.bundle) + " twice in one XOR bid");
            }
        }
    }
}

SolveResult solve(const AllocationProblem& problem, const SolveOptions& options) {
    const Encoded enc(problem);
    Search search(enc, options);
    search.run();
    if (!search.best()) {
        if (search.truncated()) {
            throw GuardExceeded("solver: node limit " + std::to_string(options.node_limit) +
                                " reached before any feasible assignment");
        }
        return infeasible(enc.agents(), search.nodes());
    }
    SolveResult r = make_result(enc, *search.best(), search.nodes());
    if (search.truncated()) {
        r.certificate.kind = Certificate::Kind::Bounded;
        if (enc.boundable()) {
            const UtilityVector ub = search.optimistic(0, 0);
            r.certificate.gap = enc.objective(ub, Assignment(enc.agents(), std::size_t{0})) - r.objective;
        }
    }
    return r;
}

SolveResult brute_force(const AllocationProblem& problem) {
    const Encoded enc(problem);
    const auto size = enc.enumeration_size();
    std::optional<Assignment> best;
    Key best_key;
    enc.enumerate([&](const Assignment& assignment) {
        Key key = enc.key(enc.utilities(assignment), assignment);
        if (!best || best_key < key) {
            best = assignment;
            best_key = std::move(key);
        }
    });
    if (!best) return infeasible(enc.agents(), size);
    return make_result(enc, *best, size);
}

std::vector<FeasibleAssignment> enumerate_feasible(const AllocationProblem& problem) {
    const Encoded enc(problem);
    (void)enc.enumeration_size();
    std::vector<FeasibleAssignment> out;
    enc.enumerate([&](const Assignment& assignment) { out.push_back({assignment, enc.utilities(assignment)}); });
    return out;
}

UtilityVector induced_utilities(const AllocationProblem& problem, const Assignment& assignment) {
    if (assignment.size() != problem.agent_count()) throw DomainError("assignment length differs from agent count");
    UtilityVector u(problem.agent_count());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (!assignment[i]) continue;
        if (*assignment[i] >= problem.bids[i].atoms.size()) {
            throw DomainError("assignment: agent " + std::to_string(i + 1) + " has no atom " +
                              std::to_string(*assignment[i]));
        }
        u[i] = problem.bids[i].atoms[*assignment[i]].utility;
    }
    return u;
}

Rational objective_of(const AllocationProblem& problem, const Assignment& assignment) {
    const Encoded enc(problem);
    return enc.objective(induced_utilities(problem, assignment), assignment);
}

bool leximin_optimal_is_pareto(const AllocationProblem& problem) {
    const auto feasible = enumerate_feasible(problem);
    if (feasible.empty()) return true;
    std::vector<UtilityVector> vectors;
    for (const auto& f : feasible) vectors.push_back(f.utilities);

    const UtilityVector* top = &vectors.front();
    Rational best_egal = *std::min_element(top->begin(), top->end());
    for (const auto& v : vectors) {
        if (leximin_compare(*top, v) == SwoVerdict::StrictlyLess) top = &v;
        best_egal = max(best_egal, *std::min_element(v.begin(), v.end()));
    }
    for (const auto& v : vectors) {
        if (leximin_compare(v, *top) != SwoVerdict::Indifferent) continue;
        if (!pareto_efficient(v, vectors)) return false;
        if (*std::min_element(v.begin(), v.end()) != best_egal) return false;
    }
    return true;
}

AllocationProblem exhaustive_problem(const Bundle& goods, std::span<const BundleValuation> valuations,
                                     Criterion criterion) {
    if (goods.size() > 16) throw DomainError("exhaustive encoding: at most 16 goods");
    const std::vector<Good> list(goods.begin(), goods.end());
    AllocationProblem problem;
    problem.goods = goods;
    problem.criterion = std::move(criterion);
    problem.complete = true;
    for (std::size_t i = 0; i < valuations.size(); ++i) {
        XorBid bid{i + 1, {}};
        for (std::uint32_t subset = 0; subset < (1u << list.size()); ++subset) {
            Bundle b;
            for (std::size_t g = 0; g < list.size(); ++g) {
                if (subset & (1u << g)) b.insert(list[g]);
            }
            Rational value = valuations[i](b);
            bid.atoms.push_back({std::move(b), std::move(value)});
        }
        problem.bids.push_back(std::move(bid));
    }
    return problem;
}

}  // namespace fairdiv
