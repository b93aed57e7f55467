#include "fairdiv/welfare.hpp"

#include <algorithm>
#include <sstream>

namespace fairdiv {

namespace {

void require_same_length(std::span<const Rational> u, std::span<const Rational> v) {
    if (u.size() != v.size()) {
        throw DomainError("utility vectors have different lengths (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
    }
}

void require_nonempty(std::span<const Rational> u) {
    if (u.empty()) throw DomainError("utility vector must have at least one entry");
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

SwoVerdict compare_values(const Rational& a, const Rational& b) {
    if (a < b) return SwoVerdict::StrictlyLess;
    if (b < a) return SwoVerdict::StrictlyGreater;
    return SwoVerdict::Indifferent;
}

}  // namespace

Cuf Cuf::geometric_owa(const Rational& alpha, std::size_t n) {
    std::vector<Rational> weights;
    Rational w(1);
    for (std::size_t i = 0; i < n; ++i) {
        weights.push_back(w);
        w *= alpha;
    }
    return owa(std::move(weights));
}

Cuf Cuf::parse(std::string_view name) {
    if (name == "util" || name == "utilitarian") return utilitarian();
    if (name == "egal" || name == "egalitarian") return egalitarian();
    if (name == "elit" || name == "elitist") return elitist();
    if (name == "nash") return nash();
    if (name.starts_with("rank:")) {
        const auto digits = name.substr(5);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw DomainError("cuf: malformed rank '" + std::string(name) + "' (expected rank:k with k >= 1)");
        }
        const auto k = std::stoul(std::string(digits));
        if (k == 0) throw DomainError("cuf: rank k must be at least 1");
        return k_rank(k);
    }
    if (name.starts_with("owa:")) {
        std::vector<Rational> weights;
        for (const auto& part : split(name.substr(4), ',')) weights.push_back(Rational::parse(part));
        return owa(std::move(weights));
    }
    throw DomainError("cuf: unknown collective utility function '" + std::string(name) +
                      "' (expected util, egal, elit, rank:k, nash, owa:w1,...)");
}

std::string Cuf::name() const {
    switch (kind) {
        case Kind::Utilitarian: return "util";
        case Kind::Egalitarian: return "egal";
        case Kind::Elitist: return "elit";
        case Kind::KRank: return "rank:" + std::to_string(k);
        case Kind::Nash: return "nash";
        case Kind::Owa: {
            std::string out = "owa:";
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (i) out += ",";
                out += weights[i].to_string();
            }
            return out;
        }
    }
    return {};
}

Rational collective_utility(const Cuf& cuf, std::span<const Rational> u) {
    require_nonempty(u);
    switch (cuf.kind) {
        case Cuf::Kind::Utilitarian: {
            Rational sum;
            for (const auto& x : u) sum += x;
            return sum;
        }
        case Cuf::Kind::Egalitarian: return *std::min_element(u.begin(), u.end());
        case Cuf::Kind::Elitist: return *std::max_element(u.begin(), u.end());
        case Cuf::Kind::KRank: {
            if (cuf.k < 1 || cuf.k > u.size()) {
                throw DomainError("cuf: rank " + std::to_string(cuf.k) + " out of range for " +
                                  std::to_string(u.size()) + " agents");
            }
            return ordered(u)[cuf.k - 1];
        }
        case Cuf::Kind::Nash: {
            Rational product(1);
            for (const auto& x : u) product *= x;
            return product;
        }
        case Cuf::Kind::Owa: {
            if (cuf.weights.size() != u.size()) {
                throw DomainError("cuf: OWA has " + std::to_string(cuf.weights.size()) + " weights for " +
                                  std::to_string(u.size()) + " agents");
            }
            const auto sorted = ordered(u);
            Rational sum;
            for (std::size_t i = 0; i < sorted.size(); ++i) sum += cuf.weights[i] * sorted[i];
            return sum;
        }
    }
    return {};
}

std::string to_string(SwoVerdict verdict) {
    switch (verdict) {
        case SwoVerdict::StrictlyLess: return "less";
        case SwoVerdict::Indifferent: return "indifferent";
        case SwoVerdict::StrictlyGreater: return "greater";
    }
    return {};
}

SwoVerdict leximin_compare(std::span<const Rational> u, std::span<const Rational> v) {
    require_same_length(u, v);
    const auto us = ordered(u);
    const auto vs = ordered(v);
    for (std::size_t k = 0; k < us.size(); ++k) {
        if (us[k] != vs[k]) return compare_values(us[k], vs[k]);
    }
    return SwoVerdict::Indifferent;
}

Swo::Swo(std::string name, Domain domain, Compare compare)
    : name_(std::move(name)), domain_(domain), compare_(std::move(compare)) {}

Swo Swo::from_cuf(const Cuf& cuf) {
    const auto domain = cuf.kind == Cuf::Kind::Nash ? Domain::Positive : Domain::Real;
    Swo swo(cuf.name(), domain, [cuf](std::span<const Rational> u, std::span<const Rational> v) {
        require_same_length(u, v);
        return compare_values(collective_utility(cuf, u), collective_utility(cuf, v));
    });
    swo.cuf_ = cuf;
    return swo;
}

Swo Swo::leximin() { return Swo("leximin", Domain::Real, leximin_compare); }

Swo Swo::parse(std::string_view name) {
    if (name == "leximin" || name == "lex") return leximin();
    return from_cuf(Cuf::parse(name));
}

bool pareto_dominates(std::span<const Rational> u, std::span<const Rational> v) {
    require_same_length(u, v);
    bool strict = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (v[i] < u[i]) return false;
        if (u[i] < v[i]) strict = true;
    }
    return strict;
}

bool pareto_efficient(std::span<const Rational> candidate, std::span<const UtilityVector> feasible) {
    const bool present = std::any_of(feasible.begin(), feasible.end(), [&](const UtilityVector& f) {
        return std::equal(f.begin(), f.end(), candidate.begin(), candidate.end());
    });
    if (!present) throw DomainError("pareto: candidate " + format_vector(candidate) + " is not in the feasible set");
    return std::none_of(feasible.begin(), feasible.end(),
                        [&](const UtilityVector& f) { return pareto_dominates(candidate, f); });
}

ValueMatrix value_matrix(std::span<const BundleValuation> valuations, std::span<const Bundle> bundles,
                         const Bundle& all_goods) {
    if (valuations.size() != bundles.size()) {
        throw DomainError("valuation count does not match bundle count");
    }
    ValueMatrix m;
    for (const auto& val : valuations) {
        std::vector<Rational> row;
        row.reserve(bundles.size());
        for (const auto& b : bundles) row.push_back(val(b));
        m.value.push_back(std::move(row));
        m.full_value.push_back(val(all_goods));
    }
    return m;
}

ValueMatrix value_matrix(std::span<const BundleValuation> valuations, const GoodsAllocation& allocation) {
    return value_matrix(valuations, allocation.bundles(), allocation.goods());
}

bool proportional(const ValueMatrix& values) {
    const auto n = Rational(static_cast<std::int64_t>(values.agent_count()));
    for (std::size_t i = 0; i < values.agent_count(); ++i) {
        if (values.value[i][i] * n < values.full_value[i]) return false;
    }
    return true;
}

bool envy_free(const ValueMatrix& values) {
    for (std::size_t i = 0; i < values.agent_count(); ++i) {
        for (std::size_t j = 0; j < values.agent_count(); ++j) {
            if (values.value[i][i] < values.value[i][j]) return false;
        }
    }
    return true;
}

EnvyMeasureSpec EnvyMeasureSpec::parse(std::string_view text) {
    const auto parts = split(text, '/');
    if (parts.size() != 3) {
        throw DomainError("envy measure: expected pos|total|bool/sum|max/sum|max, got '" + std::string(text) + "'");
    }
    EnvyMeasureSpec spec;
    if (parts[0] == "pos") spec.pairwise = Pairwise::Positive;
    else if (parts[0] == "total") spec.pairwise = Pairwise::Total;
    else if (parts[0] == "bool") spec.pairwise = Pairwise::Boolean;
    else throw DomainError("envy measure: unknown pairwise measure '" + parts[0] + "'");
    auto aggregate = [](const std::string& s) {
        if (s == "sum") return Aggregate::Sum;
        if (s == "max") return Aggregate::Max;
        throw DomainError("envy measure: unknown aggregation '" + s + "'");
    };
    spec.agent_agg = aggregate(parts[1]);
    spec.society_agg = aggregate(parts[2]);
    return spec;
}

std::string EnvyMeasureSpec::name() const {
    const char* p = pairwise == Pairwise::Positive ? "pos" : (pairwise == Pairwise::Total ? "total" : "bool");
    auto agg = [](Aggregate a) { return a == Aggregate::Sum ? "sum" : "max"; };
    return std::string(p) + "/" + agg(agent_agg) + "/" + agg(society_agg);
}

std::vector<EnvyMeasureSpec> EnvyMeasureSpec::all() {
    std::vector<EnvyMeasureSpec> specs;
    for (auto p : {Pairwise::Positive, Pairwise::Total, Pairwise::Boolean}) {
        for (auto a : {Aggregate::Sum, Aggregate::Max}) {
            for (auto s : {Aggregate::Sum, Aggregate::Max}) specs.push_back({p, a, s});
        }
    }
    return specs;
}

Rational degree_of_envy(const ValueMatrix& values, const EnvyMeasureSpec& spec) {
    const auto n = values.agent_count();
    auto aggregate = [](EnvyMeasureSpec::Aggregate how, const std::vector<Rational>& xs) {
        if (xs.empty()) return Rational(0);
        if (how == EnvyMeasureSpec::Aggregate::Max) return *std::max_element(xs.begin(), xs.end());
        Rational sum;
        for (const auto& x : xs) sum += x;
        return sum;
    };
    std::vector<Rational> per_agent;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> pair_envy;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Rational diff = values.value[i][j] - values.value[i][i];
            switch (spec.pairwise) {
                case EnvyMeasureSpec::Pairwise::Positive: pair_envy.push_back(max(diff, Rational(0))); break;
                case EnvyMeasureSpec::Pairwise::Total: pair_envy.push_back(diff); break;
                case EnvyMeasureSpec::Pairwise::Boolean: pair_envy.push_back(Rational(diff.sign() > 0 ? 1 : 0)); break;
            }
        }
        per_agent.push_back(aggregate(spec.agent_agg, pair_envy));
    }
    return aggregate(spec.society_agg, per_agent);
}

}  // namespace fairdiv
