#include "fairdiv/cake/valuation.hpp"

#include <algorithm>
#include <sstream>

namespace fairdiv::cake {

Piece::Piece(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (iv.lo.sign() < 0 || Rational(1) < iv.hi) {
            throw DomainError("piece: interval [" + iv.lo.to_string() + "," + iv.hi.to_string() + "] leaves the cake [0,1]");
        }
        if (iv.hi < iv.lo) {
            throw DomainError("piece: reversed interval [" + iv.lo.to_string() + "," + iv.hi.to_string() + "]");
        }
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.lo == iv.hi; });
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (auto& iv : intervals) {
        if (!intervals_.empty()) {
            auto& last = intervals_.back();
            if (iv.lo < last.hi) throw DomainError("piece: overlapping intervals");
            if (iv.lo == last.hi) {
                last.hi = iv.hi;
                continue;
            }
        }
        intervals_.push_back(std::move(iv));
    }
}

Piece Piece::between(const Rational& lo, const Rational& hi) { return Piece({{lo, hi}}); }

Rational Piece::length() const {
    Rational total;
    for (const auto& iv : intervals_) total += iv.length();
    return total;
}

const Rational& Piece::leftmost() const {
    if (intervals_.empty()) throw DomainError("piece: empty piece has no leftmost point");
    return intervals_.front().lo;
}

std::pair<Piece, Piece> Piece::split_at(const Rational& x) const {
    std::vector<Interval> left;
    std::vector<Interval> right;
    for (const auto& iv : intervals_) {
        if (iv.hi <= x) {
            left.push_back(iv);
        } else if (x <= iv.lo) {
            right.push_back(iv);
        } else {
            left.push_back({iv.lo, x});
            right.push_back({x, iv.hi});
        }
    }
    return {Piece(std::move(left)), Piece(std::move(right))};
}

Piece Piece::unite(const Piece& other) const {
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return Piece(std::move(all));
}

std::string Piece::to_string() const {
    if (intervals_.empty()) return "{}";
    std::ostringstream os;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) os << " U ";
        os << "[" << intervals_[i].lo << "," << intervals_[i].hi << "]";
    }
    return os.str();
}

CakeValuation::CakeValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
    if (breakpoints_.size() < 2 || breakpoints_.size() != densities_.size() + 1) {
        throw DomainError("cake valuation: need k+1 breakpoints for k densities (k >= 1)");
    }
    if (!breakpoints_.front().is_zero() || breakpoints_.back() != Rational(1)) {
        throw DomainError("cake valuation: breakpoints must start at 0 and end at 1");
    }
    for (std::size_t s = 0; s + 1 < breakpoints_.size(); ++s) {
        if (!(breakpoints_[s] < breakpoints_[s + 1])) {
            throw DomainError("cake valuation: breakpoints must be strictly increasing");
        }
    }
    for (const auto& d : densities_) {
        if (d.sign() <= 0) {
            throw DomainError("cake valuation violates strict positivity: density " + d.to_string() +
                              " (every non-empty slice must have positive value)");
        }
    }
    cumulative_.reserve(breakpoints_.size());
    cumulative_.emplace_back(0);
    for (std::size_t s = 0; s < densities_.size(); ++s) {
        cumulative_.push_back(cumulative_.back() + densities_[s] * (breakpoints_[s + 1] - breakpoints_[s]));
    }
    if (cumulative_.back() != Rational(1)) {
        throw DomainError("cake valuation violates normalisation: whole cake is worth " + cumulative_.back().to_string() +
                          ", must be exactly 1");
    }
}

CakeValuation CakeValuation::uniform() { return CakeValuation({Rational(0), Rational(1)}, {Rational(1)}); }

CakeValuation CakeValuation::from_weights(std::vector<Rational> breakpoints, std::span<const Rational> weights) {
    if (breakpoints.size() != weights.size() + 1) {
        throw DomainError("cake valuation: need k+1 breakpoints for k weights");
    }
    Rational total;
    for (const auto& w : weights) total += w;
    if (total.sign() <= 0) throw DomainError("cake valuation: weights must have positive total");
    std::vector<Rational> densities;
    for (std::size_t s = 0; s < weights.size(); ++s) {
        const Rational len = breakpoints[s + 1] - breakpoints[s];
        if (len.sign() <= 0) throw DomainError("cake valuation: breakpoints must be strictly increasing");
        densities.push_back(weights[s] / (len * total));
    }
    return CakeValuation(std::move(breakpoints), std::move(densities));
}

std::size_t CakeValuation::segment_of(const Rational& x) const {
    // Last segment whose left breakpoint is <= x.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end() - 1, x);
    const auto s = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    return s == 0 ? 0 : std::min(s - 1, densities_.size() - 1);
}

Rational CakeValuation::cumulative(const Rational& x) const {
    if (x.sign() <= 0) return Rational(0);
    if (Rational(1) <= x) return Rational(1);
    const auto s = segment_of(x);
    return cumulative_[s] + densities_[s] * (x - breakpoints_[s]);
}

Rational CakeValuation::inverse_cumulative(const Rational& t) const {
    if (t.sign() < 0 || Rational(1) < t) {
        throw DomainError("cake valuation: cumulative value " + t.to_string() + " outside [0,1]");
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, t);
    auto s = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
    s = s == 0 ? 0 : std::min(s - 1, densities_.size() - 1);
    return breakpoints_[s] + (t - cumulative_[s]) / densities_[s];
}

Rational CakeValuation::eval(const Interval& interval) const {
    return cumulative(interval.hi) - cumulative(interval.lo);
}

Rational CakeValuation::eval(const Piece& piece) const {
    Rational total;
    for (const auto& iv : piece.intervals()) total += eval(iv);
    return total;
}

Rational CakeValuation::mark(const Rational& x, const Rational& alpha) const {
    if (x.sign() < 0 || Rational(1) < x) throw DomainError("mark: position " + x.to_string() + " outside [0,1]");
    const Rational start = cumulative(x);
    if (alpha.sign() < 0 || Rational(1) - start < alpha) {
        throw DomainError("mark: value " + alpha.to_string() + " outside [0, " + (Rational(1) - start).to_string() +
                          "] available right of " + x.to_string());
    }
    if (alpha.is_zero()) return x;
    return inverse_cumulative(start + alpha);
}

Rational CakeValuation::mark_in_piece(const Piece& piece, const Rational& alpha) const {
    if (piece.empty()) throw DomainError("mark: cannot mark inside an empty piece");
    if (alpha.sign() < 0) throw DomainError("mark: negative value " + alpha.to_string());
    Rational remaining = alpha;
    for (const auto& iv : piece.intervals()) {
        const Rational here = eval(iv);
        if (remaining <= here) return mark(iv.lo, remaining);
        remaining -= here;
    }
    throw DomainError("mark: value " + alpha.to_string() + " exceeds the piece's worth " + eval(piece).to_string());
}

std::string CakeValuation::to_string() const {
    std::ostringstream os;
    for (std::size_t s = 0; s < densities_.size(); ++s) {
        if (s) os << " ";
        os << "[" << breakpoints_[s] << "," << breakpoints_[s + 1] << "]:" << densities_[s];
    }
    return os.str();
}

CakeValuation random_valuation(Rng& rng, std::size_t max_segments) {
    const auto segments = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_segments)));
    std::vector<Rational> cuts;
    while (cuts.size() + 1 < segments) {
        Rational c = rng.rational(0, 1, 12);
        if (c.sign() > 0 && c < Rational(1) && std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> breakpoints{Rational(0)};
    breakpoints.insert(breakpoints.end(), cuts.begin(), cuts.end());
    breakpoints.emplace_back(1);
    std::vector<Rational> weights;
    for (std::size_t s = 0; s < segments; ++s) {
        // Occasional heavy segments produce lopsided, adversarial preferences.
        weights.emplace_back(rng.uniform(0, 4) == 0 ? rng.uniform(20, 60) : rng.uniform(1, 9));
    }
    return CakeValuation::from_weights(std::move(breakpoints), weights);
}

}  // namespace fairdiv::cake
