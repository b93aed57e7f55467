#include <algorithm>

#include "fairdiv/cake/procedures.hpp"

namespace fairdiv::cake {

namespace {

struct ProcedureName {
    Procedure procedure;
    const char* name;
};

constexpr ProcedureName kProcedureNames[] = {
    {Procedure::CutAndChoose, "cut-and-choose"},     {Procedure::Steinhaus, "steinhaus"},
    {Procedure::BanachKnaster, "banach-knaster"},    {Procedure::DubinsSpanier, "dubins-spanier"},
    {Procedure::EvenPaz, "even-paz"},                {Procedure::SelfridgeConway, "selfridge-conway"},
    {Procedure::Stromquist, "stromquist"},
};

}  // namespace

QueryOracle::QueryOracle(std::span<const CakeValuation> valuations) : valuations_(valuations) {}

const CakeValuation& QueryOracle::valuation(AgentId agent) const {
    require_agent(agent, valuations_.size());
    return valuations_[agent - 1];
}

Rational QueryOracle::eval(AgentId agent, const Piece& piece) {
    Rational answer = valuation(agent).eval(piece);
    log_.push_back({agent, CakeQuery::Kind::Eval, piece.to_string(), answer});
    return answer;
}

Rational QueryOracle::mark(AgentId agent, const Rational& x, const Rational& alpha) {
    Rational answer = valuation(agent).mark(x, alpha);
    log_.push_back({agent, CakeQuery::Kind::Mark, "from " + x.to_string() + " worth " + alpha.to_string(), answer});
    return answer;
}

Rational QueryOracle::mark_in_piece(AgentId agent, const Piece& piece, const Rational& alpha) {
    Rational answer = valuation(agent).mark_in_piece(piece, alpha);
    log_.push_back({agent, CakeQuery::Kind::Mark, "in " + piece.to_string() + " worth " + alpha.to_string(), answer});
    return answer;
}

std::size_t CakeDivision::mark_queries() const {
    return static_cast<std::size_t>(std::count_if(query_log.begin(), query_log.end(),
                                                  [](const CakeQuery& q) { return q.kind == CakeQuery::Kind::Mark; }));
}

std::size_t CakeDivision::eval_queries() const { return query_log.size() - mark_queries(); }

CakeDivision make_division(std::vector<Piece> pieces, std::size_t knife_cuts, std::vector<CakeQuery> log,
                           std::vector<std::string> events) {
    std::vector<Interval> all;
    for (const auto& p : pieces) all.insert(all.end(), p.intervals().begin(), p.intervals().end());
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Rational reached(0);
    for (const auto& iv : all) {
        if (iv.lo != reached) {
            throw DomainError("division is not complete and disjoint near " + reached.to_string());
        }
        reached = iv.hi;
    }
    if (reached != Rational(1)) throw DomainError("division leaves [" + reached.to_string() + ",1] unallocated");

    CakeDivision d;
    d.pieces = std::move(pieces);
    // Pieces are coalesced, so neighbouring intervals always have different owners.
    d.cut_count = all.empty() ? 0 : all.size() - 1;
    d.knife_cuts = knife_cuts;
    d.query_log = std::move(log);
    d.events = std::move(events);
    return d;
}

Procedure parse_procedure(std::string_view name) {
    for (const auto& entry : kProcedureNames) {
        if (name == entry.name) return entry.procedure;
    }
    throw DomainError("unknown cake procedure '" + std::string(name) +
                      "' (expected cut-and-choose, steinhaus, banach-knaster, dubins-spanier, even-paz, "
                      "selfridge-conway, stromquist)");
}

std::string to_string(Procedure procedure) {
    for (const auto& entry : kProcedureNames) {
        if (entry.procedure == procedure) return entry.name;
    }
    return "?";
}

std::vector<Procedure> all_procedures() {
    std::vector<Procedure> out;
    for (const auto& entry : kProcedureNames) out.push_back(entry.procedure);
    return out;
}

std::optional<std::size_t> required_players(Procedure procedure) {
    switch (procedure) {
        case Procedure::CutAndChoose: return 2;
        case Procedure::Steinhaus:
        case Procedure::SelfridgeConway:
        case Procedure::Stromquist: return 3;
        default: return std::nullopt;
    }
}

CakeDivision run_procedure(Procedure procedure, std::span<const CakeValuation> valuations, bool contiguous) {
    if (auto required = required_players(procedure); required && *required != valuations.size()) {
        throw DomainError(to_string(procedure) + " needs exactly " + std::to_string(*required) + " players, got " +
                          std::to_string(valuations.size()));
    }
    switch (procedure) {
        case Procedure::CutAndChoose: return cut_and_choose(valuations[0], valuations[1]);
        case Procedure::Steinhaus: return steinhaus(valuations[0], valuations[1], valuations[2]);
        case Procedure::BanachKnaster: return banach_knaster(valuations, contiguous);
        case Procedure::DubinsSpanier: return dubins_spanier(valuations);
        case Procedure::EvenPaz: return even_paz(valuations);
        case Procedure::SelfridgeConway: return selfridge_conway(valuations[0], valuations[1], valuations[2]);
        case Procedure::Stromquist: return stromquist(valuations[0], valuations[1], valuations[2]);
    }
    throw DomainError("unhandled procedure");
}

ValueMatrix value_matrix(const CakeDivision& division, std::span<const CakeValuation> valuations) {
    if (division.pieces.size() != valuations.size()) {
        throw DomainError("division has " + std::to_string(division.pieces.size()) + " pieces for " +
                          std::to_string(valuations.size()) + " valuations");
    }
    ValueMatrix m;
    for (const auto& v : valuations) {
        std::vector<Rational> row;
        for (const auto& p : division.pieces) row.push_back(v.eval(p));
        m.value.push_back(std::move(row));
        m.full_value.emplace_back(1);
    }
    return m;
}

DivisionReport verify_division(const CakeDivision& division, std::span<const CakeValuation> valuations) {
    DivisionReport report;
    try {
        report.cut_count = make_division(division.pieces, 0, {}, {}).cut_count;
        report.complete = true;
    } catch (const DomainError&) {
        report.complete = false;
    }
    report.values = value_matrix(division, valuations);
    report.proportional = proportional(report.values);
    report.envy_free = envy_free(report.values);
    report.contiguous = std::all_of(division.pieces.begin(), division.pieces.end(),
                                    [](const Piece& p) { return p.contiguous(); });
    report.knife_cuts = division.knife_cuts;
    report.mark_queries = division.mark_queries();
    report.eval_queries = division.eval_queries();
    return report;
}

}  // namespace fairdiv::cake
