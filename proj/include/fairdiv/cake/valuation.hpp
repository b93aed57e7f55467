#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/random.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv::cake {

/// Closed interval [lo, hi] of the unit cake with lo < hi.
struct Interval {
    Rational lo;
    Rational hi;

    [[nodiscard]] Rational length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint subintervals of [0, 1], kept sorted with
/// touching intervals merged. Single points carry no value and are dropped.
class Piece {
public:
    Piece() = default;
    /// Throws DomainError if intervals leave [0, 1], are reversed, or overlap
    /// on a set of positive length.
    explicit Piece(std::vector<Interval> intervals);

    static Piece whole() { return Piece({{Rational(0), Rational(1)}}); }
    static Piece between(const Rational& lo, const Rational& hi);

    [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
    [[nodiscard]] bool empty() const { return intervals_.empty(); }
    [[nodiscard]] bool contiguous() const { return intervals_.size() <= 1; }
    [[nodiscard]] Rational length() const;
    [[nodiscard]] const Rational& leftmost() const;

    /// Parts of the piece left and right of x.
    [[nodiscard]] std::pair<Piece, Piece> split_at(const Rational& x) const;
    /// Disjoint union; throws DomainError if the pieces overlap.
    [[nodiscard]] Piece unite(const Piece& other) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Piece&, const Piece&) = default;

private:
    std::vector<Interval> intervals_;
};

/// Piecewise-constant density on [0, 1] with rational breakpoints and
/// strictly positive densities that integrate to exactly 1.
class CakeValuation {
public:
    /// Throws DomainError naming the violated condition: breakpoints must run
    /// strictly upward from 0 to 1, every density must be positive, and the
    /// total value must be exactly 1.
    CakeValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);

    static CakeValuation uniform();
    /// Densities proportional to `weights` on the given segments.
    static CakeValuation from_weights(std::vector<Rational> breakpoints, std::span<const Rational> weights);

    [[nodiscard]] const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] const std::vector<Rational>& densities() const { return densities_; }

    /// Value of [0, x].
    [[nodiscard]] Rational cumulative(const Rational& x) const;
    /// The unique x with cumulative(x) == t, for t in [0, 1].
    [[nodiscard]] Rational inverse_cumulative(const Rational& t) const;

    [[nodiscard]] Rational eval(const Interval& interval) const;
    [[nodiscard]] Rational eval(const Piece& piece) const;

    /// The unique y with eval([x, y]) == alpha. Throws DomainError unless
    /// 0 <= x <= 1 and 0 <= alpha <= eval([x, 1]).
    [[nodiscard]] Rational mark(const Rational& x, const Rational& alpha) const;
    /// The point y such that the part of `piece` left of y is worth alpha.
    /// With alpha == 0 this is the piece's leftmost point.
    [[nodiscard]] Rational mark_in_piece(const Piece& piece, const Rational& alpha) const;

    [[nodiscard]] std::string to_string() const;

private:
    std::size_t segment_of(const Rational& x) const;

    std::vector<Rational> breakpoints_;
    std::vector<Rational> densities_;
    std::vector<Rational> cumulative_;  // value of [0, breakpoints_[s]]
};

/// Random valuation with 1..max_segments segments.
CakeValuation random_valuation(Rng& rng, std::size_t max_segments = 5);

}  // namespace fairdiv::cake
