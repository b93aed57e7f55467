#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/random.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv {

enum class Axiom {
    Anonymity,
    Unanimity,
    Separability,
    PigouDalton,        // weak form: u ⪯ v after an inequality-reducing transfer
    PigouDaltonStrict,  // strict form: u ≺ v
    ZeroIndependence,   // ZI
    ScaleIndependence,  // SI, positive vectors only
    CommonZero,         // ICZ
    CommonScale,        // ICS, positive vectors only
    CommonPace,         // ICP
};

/// Names: anonymity, unanimity, separability, pigou-dalton,
/// pigou-dalton-strict, zi, si, icz, ics, icp.
Axiom parse_axiom(std::string_view name);
std::string to_string(Axiom axiom);
std::vector<Axiom> all_axioms();

/// Strictly increasing piecewise-linear map on the rationals. Outside the
/// knot range the first and last segments are extended, so the map is a
/// bijection of the whole line.
class PiecewiseLinearMap {
public:
    /// Throws DomainError unless there are at least two knots and both
    /// coordinates are strictly increasing.
    PiecewiseLinearMap(std::vector<Rational> xs, std::vector<Rational> ys);

    Rational operator()(const Rational& x) const;
    UtilityVector operator()(std::span<const Rational> u) const;

    [[nodiscard]] const std::vector<Rational>& xs() const { return xs_; }
    [[nodiscard]] const std::vector<Rational>& ys() const { return ys_; }

private:
    std::vector<Rational> xs_;
    std::vector<Rational> ys_;
};

/// Instance data for one axiom check. Which fields are read depends on the
/// axiom:
///   anonymity, unanimity           u, v
///   separability, zi, si           u, v, w
///   pigou-dalton(-strict)          u, v, i, j  (1-based agents)
///   icz, ics                       u, v, lambda
///   icp                            u, v, pace
struct AxiomWitness {
    UtilityVector u;
    UtilityVector v;
    UtilityVector w;
    std::size_t i = 0;
    std::size_t j = 0;
    Rational lambda;
    std::optional<PiecewiseLinearMap> pace;
};

struct AxiomVerdict {
    bool holds = true;
    /// Offending comparison when the axiom is violated: the SWO failed to
    /// rank `lhs` weakly (or strictly) below `rhs`.
    UtilityVector lhs;
    UtilityVector rhs;
    std::string detail;
};

/// Evaluates the axiom's implication on a single witness. Throws DomainError
/// if the witness does not have the shape the axiom requires.
AxiomVerdict check_axiom_instance(const Swo& swo, Axiom axiom, const AxiomWitness& witness);

/// Draws a well-formed witness for `axiom` over n agents. Vectors are
/// strictly positive when the axiom or the SWO's domain demands it.
AxiomWitness random_witness(Axiom axiom, std::size_t n, Swo::Domain domain, Rng& rng);

struct AxiomSurvey {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::optional<AxiomWitness> first_violation_witness;
    std::optional<AxiomVerdict> first_violation;
};

/// Checks `fixed` witnesses first, then `samples` random ones with n drawn
/// uniformly from [min_n, max_n].
AxiomSurvey survey_axiom(const Swo& swo, Axiom axiom, std::size_t samples, std::uint64_t seed,
                         std::span<const AxiomWitness> fixed = {}, std::size_t min_n = 2, std::size_t max_n = 6);

}  // namespace fairdiv
