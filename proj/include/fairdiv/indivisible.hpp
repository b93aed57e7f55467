#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

struct XorAtom {
    Bundle bundle;
    Rational utility;
};

/// Explicit XOR bid: the agent receives at most one of the listed bundles.
struct XorBid {
    AgentId agent = 0;
    std::vector<XorAtom> atoms;
};

/// Optimisation criterion: a CUF, or the leximin ordering when `cuf` is empty.
struct Criterion {
    std::optional<Cuf> cuf;

    static Criterion leximin() { return {}; }
    static Criterion of(Cuf c) { return {std::move(c)}; }
    /// CUF names plus "leximin".
    static Criterion parse(std::string_view name);

    [[nodiscard]] bool is_leximin() const { return !cuf.has_value(); }
    [[nodiscard]] std::string name() const;
};

/// How the Nash product treats agents that receive no atom.
enum class NashUnassigned {
    Zero,     // they count with utility 0, so the product is 0
    Exclude,  // the product runs over assigned agents only
};

struct AllocationProblem {
    Bundle goods;
    /// bids[k] belongs to agent k + 1.
    std::vector<XorBid> bids;
    Criterion criterion = Criterion::of(Cuf::utilitarian());
    /// Every good must be assigned (no free disposal).
    bool complete = false;
    NashUnassigned nash_unassigned = NashUnassigned::Zero;

    [[nodiscard]] std::size_t agent_count() const { return bids.size(); }
};

/// Throws DomainError on unknown goods, duplicate bundles within a bid, or a
/// bid whose agent id does not match its position.
void validate(const AllocationProblem& problem);

struct Certificate {
    enum class Kind { Optimal, Bounded, Infeasible };
    Kind kind = Kind::Optimal;
    /// Bounded only: upper bound minus objective, when the criterion admits a
    /// valid bound.
    std::optional<Rational> gap;
};

std::string to_string(Certificate::Kind kind);

/// Atom index per agent, or nullopt for "nothing".
using Assignment = std::vector<std::optional<std::size_t>>;

struct SolveResult {
    Assignment assignment;
    UtilityVector utilities;
    /// Criterion value; for leximin, the minimum utility.
    Rational objective;
    Certificate certificate;
    std::size_t nodes = 0;
};

struct SolveOptions {
    /// Stop after this many search nodes and report a Bounded certificate;
    /// 0 means no limit.
    std::size_t node_limit = 0;
};

/// Exact branch-and-bound over agents. Among optimal assignments returns the
/// lexicographically smallest (by agent, "nothing" before atom 0).
SolveResult solve(const AllocationProblem& problem, const SolveOptions& options = {});

/// Largest number of assignments brute_force will enumerate.
inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

/// Exhaustive enumeration with the same tie-break as solve(). Throws
/// GuardExceeded when the product of (atoms + 1) exceeds kBruteForceGuard.
SolveResult brute_force(const AllocationProblem& problem);

struct FeasibleAssignment {
    Assignment assignment;
    UtilityVector utilities;
};

/// Every assignment satisfying the disjointness (and, if requested,
/// completeness) constraints. Same guard as brute_force.
std::vector<FeasibleAssignment> enumerate_feasible(const AllocationProblem& problem);

/// Utility vector induced by an assignment; unassigned agents get 0.
UtilityVector induced_utilities(const AllocationProblem& problem, const Assignment& assignment);

/// Criterion value of an assignment.
Rational objective_of(const AllocationProblem& problem, const Assignment& assignment);

/// True iff every leximin-optimal feasible utility vector is Pareto efficient
/// and egalitarian-optimal among the feasible vectors. Same guard as
/// brute_force.
bool leximin_optimal_is_pareto(const AllocationProblem& problem);

/// XOR encoding of arbitrary bundle valuations: every agent bids on every
/// subset of `goods`. Requires at most 16 goods.
AllocationProblem exhaustive_problem(const Bundle& goods, std::span<const BundleValuation> valuations,
                                     Criterion criterion);

}  // namespace fairdiv
