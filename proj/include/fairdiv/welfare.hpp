#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

/// Collective utility function identifier. Textual names: "util", "egal",
/// "elit", "rank:k", "nash", "owa:w1,w2,...".
struct Cuf {
    enum class Kind { Utilitarian, Egalitarian, Elitist, KRank, Nash, Owa };

    Kind kind = Kind::Utilitarian;
    std::size_t k = 0;              // KRank only, 1-based
    std::vector<Rational> weights;  // Owa only

    static Cuf utilitarian() { return {Kind::Utilitarian, 0, {}}; }
    static Cuf egalitarian() { return {Kind::Egalitarian, 0, {}}; }
    static Cuf elitist() { return {Kind::Elitist, 0, {}}; }
    static Cuf k_rank(std::size_t k) { return {Kind::KRank, k, {}}; }
    /// Median rank dictator, k = floor((n + 1) / 2).
    static Cuf median_rank(std::size_t n) { return k_rank((n + 1) / 2); }
    static Cuf nash() { return {Kind::Nash, 0, {}}; }
    static Cuf owa(std::vector<Rational> weights) { return {Kind::Owa, 0, std::move(weights)}; }
    /// OWA with weights alpha^(i-1), i = 1..n.
    static Cuf geometric_owa(const Rational& alpha, std::size_t n);

    static Cuf parse(std::string_view name);
    [[nodiscard]] std::string name() const;

    friend bool operator==(const Cuf&, const Cuf&) = default;
};

/// Social welfare of `u` under `cuf`. Throws DomainError when k is out of
/// range or the OWA weight vector has the wrong length.
Rational collective_utility(const Cuf& cuf, std::span<const Rational> u);

enum class SwoVerdict { StrictlyLess, Indifferent, StrictlyGreater };

std::string to_string(SwoVerdict verdict);

/// Leximin comparison of u against v. Throws DomainError on length mismatch.
SwoVerdict leximin_compare(std::span<const Rational> u, std::span<const Rational> v);

/// A social welfare ordering given as a three-way comparison.
class Swo {
public:
    /// Utility vectors on which the ordering is meant to be used. Nash is
    /// only a bargaining criterion over strictly positive utilities.
    enum class Domain { Real, Positive };

    using Compare = std::function<SwoVerdict(std::span<const Rational>, std::span<const Rational>)>;

    Swo(std::string name, Domain domain, Compare compare);

    static Swo from_cuf(const Cuf& cuf);
    static Swo leximin();
    /// CUF names plus "leximin" (alias "lex").
    static Swo parse(std::string_view name);

    SwoVerdict operator()(std::span<const Rational> u, std::span<const Rational> v) const {
        return compare_(u, v);
    }
    /// u ⪯ v
    [[nodiscard]] bool weakly_below(std::span<const Rational> u, std::span<const Rational> v) const {
        return compare_(u, v) != SwoVerdict::StrictlyGreater;
    }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] Domain domain() const { return domain_; }
    /// Cuf this ordering is induced by, if any.
    [[nodiscard]] const std::optional<Cuf>& cuf() const { return cuf_; }

private:
    std::string name_;
    Domain domain_;
    Compare compare_;
    std::optional<Cuf> cuf_;
};

/// True iff v Pareto-dominates u: v >= u everywhere and > somewhere.
bool pareto_dominates(std::span<const Rational> u, std::span<const Rational> v);

/// True iff no member of `feasible` Pareto-dominates `candidate`. Throws
/// DomainError if `candidate` is not itself in `feasible`.
bool pareto_efficient(std::span<const Rational> candidate, std::span<const UtilityVector> feasible);

/// Agent-by-bundle values of an allocation: value[i][j] is agent i's
/// valuation of agent j's share, full_value[i] her value of everything.
struct ValueMatrix {
    std::vector<std::vector<Rational>> value;
    std::vector<Rational> full_value;

    [[nodiscard]] std::size_t agent_count() const { return value.size(); }
};

/// Bundles may leave goods unassigned (free disposal).
ValueMatrix value_matrix(std::span<const BundleValuation> valuations, std::span<const Bundle> bundles,
                         const Bundle& all_goods);
ValueMatrix value_matrix(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation);

/// Every agent's own share is worth at least 1/n of her full value.
bool proportional(const ValueMatrix& values);
/// No agent strictly prefers another agent's share to her own.
bool envy_free(const ValueMatrix& values);

/// Degree-of-envy measure: pairwise envy, then per-agent aggregation, then
/// society-wide aggregation. Textual form "pos|total|bool/sum|max/sum|max".
struct EnvyMeasureSpec {
    enum class Pairwise { Positive, Total, Boolean };
    enum class Aggregate { Sum, Max };

    Pairwise pairwise = Pairwise::Positive;
    Aggregate agent_agg = Aggregate::Sum;
    Aggregate society_agg = Aggregate::Sum;

    static EnvyMeasureSpec parse(std::string_view text);
    [[nodiscard]] std::string name() const;
    /// All twelve combinations.
    static std::vector<EnvyMeasureSpec> all();
};

Rational degree_of_envy(const ValueMatrix& values, const EnvyMeasureSpec& spec);

}  // namespace fairdiv
