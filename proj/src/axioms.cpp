#include "fairdiv/axioms.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

struct AxiomName {
    Axiom axiom;
    const char* name;
};

constexpr AxiomName kAxiomNames[] = {
    {Axiom::Anonymity, "anonymity"},
    {Axiom::Unanimity, "unanimity"},
    {Axiom::Separability, "separability"},
    {Axiom::PigouDalton, "pigou-dalton"},
    {Axiom::PigouDaltonStrict, "pigou-dalton-strict"},
    {Axiom::ZeroIndependence, "zi"},
    {Axiom::ScaleIndependence, "si"},
    {Axiom::CommonZero, "icz"},
    {Axiom::CommonScale, "ics"},
    {Axiom::CommonPace, "icp"},
};

void require_shape(bool ok, Axiom axiom, const std::string& what) {
    if (!ok) throw DomainError("malformed " + to_string(axiom) + " witness: " + what);
}

void require_lengths(const AxiomWitness& w, Axiom axiom, bool needs_w) {
    require_shape(!w.u.empty(), axiom, "u is empty");
    require_shape(w.u.size() == w.v.size(), axiom, "u and v differ in length");
    if (needs_w) require_shape(w.w.size() == w.u.size(), axiom, "w has the wrong length");
}

bool all_positive(std::span<const Rational> x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.sign() > 0; });
}

UtilityVector add(std::span<const Rational> a, std::span<const Rational> b) {
    UtilityVector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

UtilityVector multiply(std::span<const Rational> a, std::span<const Rational> b) {
    UtilityVector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
    return out;
}

UtilityVector shift(std::span<const Rational> a, const Rational& lambda) {
    UtilityVector out(a.begin(), a.end());
    for (auto& x : out) x += lambda;
    return out;
}

UtilityVector scale(std::span<const Rational> a, const Rational& lambda) {
    UtilityVector out(a.begin(), a.end());
    for (auto& x : out) x *= lambda;
    return out;
}

AxiomVerdict violated(UtilityVector lhs, UtilityVector rhs, std::string detail) {
    return AxiomVerdict{false, std::move(lhs), std::move(rhs), std::move(detail)};
}

/// "a ⪯ b entails T(a) ⪯ T(b)", checked for both orderings of the pair.
template <typename Transform>
AxiomVerdict check_invariance(const Swo& swo, const UtilityVector& u, const UtilityVector& v, Transform transform) {
    const std::pair<const UtilityVector*, const UtilityVector*> orders[] = {{&u, &v}, {&v, &u}};
    for (const auto& [a, b] : orders) {
        if (!swo.weakly_below(*a, *b)) continue;
        auto ta = transform(*a);
        auto tb = transform(*b);
        if (!swo.weakly_below(ta, tb)) {
            std::string detail = format_vector(*a) + " <= " + format_vector(*b) + " but not " + format_vector(ta) +
                                 " <= " + format_vector(tb);
            return violated(std::move(ta), std::move(tb), std::move(detail));
        }
    }
    return {};
}

void validate_pigou_dalton(const AxiomWitness& w, Axiom axiom) {
    require_lengths(w, axiom, false);
    const auto n = w.u.size();
    require_shape(w.i >= 1 && w.i <= n && w.j >= 1 && w.j <= n && w.i != w.j, axiom,
                  "i and j must be two distinct agents");
    const auto i = w.i - 1;
    const auto j = w.j - 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (k != i && k != j) require_shape(w.u[k] == w.v[k], axiom, "agents other than i and j must be unchanged");
    }
    require_shape(w.u[i] + w.u[j] == w.v[i] + w.v[j], axiom, "transfer is not mean-preserving");
    require_shape(abs(w.v[i] - w.v[j]) < abs(w.u[i] - w.u[j]), axiom, "transfer is not inequality-reducing");
}

UtilityVector random_vector(std::size_t n, bool positive, Rng& rng) {
    UtilityVector u;
    u.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Mostly small integers so that ties (and hence interesting cases for
        // rank-based orderings) are common.
        if (rng.uniform(0, 3) == 0) {
            u.push_back(positive ? rng.rational(1, 12, 4) + Rational(1, 8) : rng.rational(-12, 12, 4));
        } else {
            u.push_back(Rational(positive ? rng.uniform(1, 12) : rng.uniform(-12, 12)));
        }
    }
    return u;
}

Rational random_nonzero(bool positive, Rng& rng) {
    while (true) {
        Rational r = positive ? rng.rational(1, 6, 3) : rng.rational(-10, 10, 3);
        if (r.sign() > 0 || (!positive && !r.is_zero())) return r;
    }
}

PiecewiseLinearMap random_pace(Rng& rng) {
    const auto knots = static_cast<std::size_t>(rng.uniform(2, 5));
    std::vector<Rational> xs;
    std::vector<Rational> ys;
    Rational x = rng.rational(-16, -4, 2);
    Rational y = rng.rational(-30, 30, 2);
    for (std::size_t k = 0; k < knots; ++k) {
        xs.push_back(x);
        ys.push_back(y);
        x += rng.rational(1, 10, 3);
        if (x.sign() == 0) x += Rational(1, 7);
        y += rng.rational(1, 20, 5);
    }
    return PiecewiseLinearMap(std::move(xs), std::move(ys));
}

}  // namespace

Axiom parse_axiom(std::string_view name) {
    for (const auto& entry : kAxiomNames) {
        if (name == entry.name) return entry.axiom;
    }
    throw DomainError("unknown axiom '" + std::string(name) +
                      "' (expected anonymity, unanimity, separability, pigou-dalton, pigou-dalton-strict, zi, si, "
                      "icz, ics, icp)");
}

std::string to_string(Axiom axiom) {
    for (const auto& entry : kAxiomNames) {
        if (entry.axiom == axiom) return entry.name;
    }
    return "?";
}

std::vector<Axiom> all_axioms() {
    std::vector<Axiom> out;
    for (const auto& entry : kAxiomNames) out.push_back(entry.axiom);
    return out;
}

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size()) {
        throw DomainError("pace map: need at least two knots with matching x and y lists");
    }
    for (std::size_t k = 1; k < xs_.size(); ++k) {
        if (!(xs_[k - 1] < xs_[k]) || !(ys_[k - 1] < ys_[k])) {
            throw DomainError("pace map: knots must be strictly increasing in both coordinates");
        }
    }
}

Rational PiecewiseLinearMap::operator()(const Rational& x) const {
    std::size_t seg = 0;
    while (seg + 2 < xs_.size() && xs_[seg + 1] <= x) ++seg;
    const Rational slope = (ys_[seg + 1] - ys_[seg]) / (xs_[seg + 1] - xs_[seg]);
    return ys_[seg] + slope * (x - xs_[seg]);
}

UtilityVector PiecewiseLinearMap::operator()(std::span<const Rational> u) const {
    UtilityVector out;
    out.reserve(u.size());
    for (const auto& x : u) out.push_back((*this)(x));
    return out;
}

AxiomVerdict check_axiom_instance(const Swo& swo, Axiom axiom, const AxiomWitness& w) {
    switch (axiom) {
        case Axiom::Anonymity: {
            require_lengths(w, axiom, false);
            require_shape(std::is_permutation(w.u.begin(), w.u.end(), w.v.begin()), axiom, "v is not a permutation of u");
            if (swo(w.u, w.v) != SwoVerdict::Indifferent) {
                return violated(w.u, w.v, "permuted vectors are not socially indifferent");
            }
            return {};
        }
        case Axiom::Unanimity: {
            require_lengths(w, axiom, false);
            bool all_strict = true;
            for (std::size_t k = 0; k < w.u.size(); ++k) {
                require_shape(w.u[k] <= w.v[k], axiom, "u must be componentwise <= v");
                if (!(w.u[k] < w.v[k])) all_strict = false;
            }
            const auto verdict = swo(w.u, w.v);
            if (verdict == SwoVerdict::StrictlyGreater) {
                return violated(w.u, w.v, "componentwise improvement ranked socially worse");
            }
            if (all_strict && verdict != SwoVerdict::StrictlyLess) {
                return violated(w.u, w.v, "strict improvement for every agent not ranked strictly better");
            }
            return {};
        }
        case Axiom::Separability: {
            require_lengths(w, axiom, true);
            for (std::size_t k = 0; k < w.u.size(); ++k) {
                require_shape(w.w[k].is_zero() || w.u[k] == w.v[k], axiom,
                              "w must be zero wherever u and v differ");
            }
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return add(x, w.w); });
        }
        case Axiom::PigouDalton:
        case Axiom::PigouDaltonStrict: {
            validate_pigou_dalton(w, axiom);
            const auto verdict = swo(w.u, w.v);
            if (verdict == SwoVerdict::StrictlyGreater) {
                return violated(w.u, w.v, "inequality-reducing transfer ranked socially worse");
            }
            if (axiom == Axiom::PigouDaltonStrict && verdict != SwoVerdict::StrictlyLess) {
                return violated(w.u, w.v, "inequality-reducing transfer not ranked strictly better");
            }
            return {};
        }
        case Axiom::ZeroIndependence: {
            require_lengths(w, axiom, true);
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return add(x, w.w); });
        }
        case Axiom::ScaleIndependence: {
            require_lengths(w, axiom, true);
            require_shape(all_positive(w.u) && all_positive(w.v) && all_positive(w.w), axiom,
                          "u, v and w must be strictly positive");
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return multiply(x, w.w); });
        }
        case Axiom::CommonZero: {
            require_lengths(w, axiom, false);
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return shift(x, w.lambda); });
        }
        case Axiom::CommonScale: {
            require_lengths(w, axiom, false);
            require_shape(all_positive(w.u) && all_positive(w.v) && w.lambda.sign() > 0, axiom,
                          "u, v and lambda must be strictly positive");
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return scale(x, w.lambda); });
        }
        case Axiom::CommonPace: {
            require_lengths(w, axiom, false);
            require_shape(w.pace.has_value(), axiom, "an increasing pace map is required");
            return check_invariance(swo, w.u, w.v, [&](const UtilityVector& x) { return (*w.pace)(x); });
        }
    }
    return {};
}

AxiomWitness random_witness(Axiom axiom, std::size_t n, Swo::Domain domain, Rng& rng) {
    const bool positive = domain == Swo::Domain::Positive || axiom == Axiom::ScaleIndependence ||
                          axiom == Axiom::CommonScale;
    AxiomWitness w;
    w.u = random_vector(n, positive, rng);
    switch (axiom) {
        case Axiom::Anonymity:
            w.v = w.u;
            rng.shuffle(w.v);
            break;
        case Axiom::Unanimity: {
            const bool strict = rng.coin();
            w.v = w.u;
            for (auto& x : w.v) {
                if (strict || rng.coin()) x += rng.rational(0, 5, 3) + (strict ? Rational(1, 5) : Rational(0));
            }
            break;
        }
        case Axiom::Separability: {
            w.v.clear();
            w.w.clear();
            const auto other = random_vector(n, positive, rng);
            for (std::size_t k = 0; k < n; ++k) {
                const bool shared = rng.coin();
                w.v.push_back(shared ? w.u[k] : other[k]);
                if (w.v[k] == w.u[k] && rng.uniform(0, 2) != 0) {
                    // Non-negative shifts keep positive-domain vectors positive.
                    w.w.push_back(positive ? rng.rational(0, 10, 2) : rng.rational(-10, 10, 2));
                } else {
                    w.w.push_back(Rational(0));
                }
            }
            break;
        }
        case Axiom::PigouDalton:
        case Axiom::PigouDaltonStrict: {
            if (n < 2) throw DomainError("pigou-dalton witnesses need at least two agents");
            w.i = rng.index(n) + 1;
            do {
                w.j = rng.index(n) + 1;
            } while (w.j == w.i);
            auto& a = w.u[w.i - 1];
            auto& b = w.u[w.j - 1];
            while (a == b) b += Rational(rng.uniform(1, 6));
            const auto q = rng.uniform(2, 8);
            const Rational t(rng.uniform(1, q - 1), q);
            const Rational d = b - a;
            w.v = w.u;
            w.v[w.i - 1] = a + t * d;
            w.v[w.j - 1] = b - t * d;
            break;
        }
        case Axiom::ZeroIndependence:
        case Axiom::ScaleIndependence:
            w.v = random_vector(n, positive, rng);
            w.w = random_vector(n, positive, rng);
            break;
        case Axiom::CommonZero:
            w.v = random_vector(n, positive, rng);
            w.lambda = random_nonzero(false, rng);
            break;
        case Axiom::CommonScale:
            w.v = random_vector(n, positive, rng);
            w.lambda = random_nonzero(true, rng);
            break;
        case Axiom::CommonPace:
            w.v = random_vector(n, positive, rng);
            w.pace = random_pace(rng);
            break;
    }
    return w;
}

AxiomSurvey survey_axiom(const Swo& swo, Axiom axiom, std::size_t samples, std::uint64_t seed,
                         std::span<const AxiomWitness> fixed, std::size_t min_n, std::size_t max_n) {
    AxiomSurvey survey;
    auto record = [&](const AxiomWitness& witness) {
        auto verdict = check_axiom_instance(swo, axiom, witness);
        ++survey.checked;
        if (!verdict.holds) {
            if (survey.violations == 0) {
                survey.first_violation_witness = witness;
                survey.first_violation = std::move(verdict);
            }
            ++survey.violations;
        }
    };
    for (const auto& witness : fixed) record(witness);
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto n = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(min_n), static_cast<std::int64_t>(max_n)));
        record(random_witness(axiom, n, swo.domain(), rng));
    }
    return survey;
}

}  // namespace fairdiv
