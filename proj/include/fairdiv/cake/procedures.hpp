#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/cake/valuation.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/welfare.hpp"

namespace fairdiv::cake {

/// One eval or mark query put to an agent during a procedure.
struct CakeQuery {
    enum class Kind { Eval, Mark };

    AgentId agent = 0;
    Kind kind = Kind::Eval;
    std::string arguments;
    Rational answer;
};

/// Query interface to the agents' valuations. Every eval and mark issued by a
/// procedure goes through here and is logged.
class QueryOracle {
public:
    explicit QueryOracle(std::span<const CakeValuation> valuations);

    [[nodiscard]] std::size_t agent_count() const { return valuations_.size(); }

    Rational eval(AgentId agent, const Piece& piece);
    /// Point y with agent's value of [x, y] equal to alpha.
    Rational mark(AgentId agent, const Rational& x, const Rational& alpha);
    /// Point y such that the part of `piece` left of y is worth alpha.
    Rational mark_in_piece(AgentId agent, const Piece& piece, const Rational& alpha);

    /// Direct access for the moving-knife simulations; not logged.
    [[nodiscard]] const CakeValuation& valuation(AgentId agent) const;

    [[nodiscard]] const std::vector<CakeQuery>& log() const { return log_; }
    std::vector<CakeQuery> take_log() { return std::move(log_); }

private:
    std::span<const CakeValuation> valuations_;
    std::vector<CakeQuery> log_;
};

/// Result of a cake-cutting procedure. pieces[k] belongs to agent k + 1.
struct CakeDivision {
    std::vector<Piece> pieces;
    /// Distinct interior points at which ownership changes.
    std::size_t cut_count = 0;
    /// Physical cuts made by the procedure (trims included).
    std::size_t knife_cuts = 0;
    std::vector<CakeQuery> query_log;
    /// Human-readable record of the run.
    std::vector<std::string> events;

    [[nodiscard]] std::size_t mark_queries() const;
    [[nodiscard]] std::size_t eval_queries() const;
};

/// Validates that `pieces` is a complete division (disjoint, covering
/// [0, 1]) and fills in cut_count. Throws DomainError otherwise.
CakeDivision make_division(std::vector<Piece> pieces, std::size_t knife_cuts, std::vector<CakeQuery> log,
                           std::vector<std::string> events);

enum class Procedure {
    CutAndChoose,
    Steinhaus,
    BanachKnaster,
    DubinsSpanier,
    EvenPaz,
    SelfridgeConway,
    Stromquist,
};

/// Names: cut-and-choose, steinhaus, banach-knaster, dubins-spanier,
/// even-paz, selfridge-conway, stromquist.
Procedure parse_procedure(std::string_view name);
std::string to_string(Procedure procedure);
std::vector<Procedure> all_procedures();

/// Players required by a procedure, or nullopt for "any n >= 2".
std::optional<std::size_t> required_players(Procedure procedure);

/// Player 1 cuts at her half-way point; player 2 takes the piece she weakly
/// prefers (the left one on ties).
CakeDivision cut_and_choose(const CakeValuation& v1, const CakeValuation& v2);

CakeDivision steinhaus(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3);

/// Last-diminisher. With contiguous == false, trims take the left part of the
/// piece off and hand it back, which can fragment the remaining cake. With
/// contiguous == true, trims are only marks that move the knife left.
CakeDivision banach_knaster(std::span<const CakeValuation> valuations, bool contiguous);

/// Discretised moving knife: every remaining player marks her 1/n point from
/// the current left edge; the leftmost mark takes the slice.
CakeDivision dubins_spanier(std::span<const CakeValuation> valuations);

CakeDivision even_paz(std::span<const CakeValuation> valuations);

CakeDivision selfridge_conway(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3);

/// Exact event simulation of the four-knife procedure.
struct StromquistRun {
    CakeDivision division;
    Rational referee;          // referee knife position at the shout
    AgentId shouter = 0;
    std::array<Rational, 3> knives;  // players' halving knives at the shout
    AgentId median_holder = 0;
    /// Each player's value, at shout time, of the piece she expects to get.
    std::array<Rational, 3> predicted;
};

StromquistRun stromquist_run(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3);
CakeDivision stromquist(const CakeValuation& v1, const CakeValuation& v2, const CakeValuation& v3);

/// Dispatches by name; checks the player count.
CakeDivision run_procedure(Procedure procedure, std::span<const CakeValuation> valuations, bool contiguous = false);

struct DivisionReport {
    bool complete = false;
    bool proportional = false;
    bool envy_free = false;
    bool contiguous = false;
    std::size_t cut_count = 0;
    std::size_t knife_cuts = 0;
    std::size_t mark_queries = 0;
    std::size_t eval_queries = 0;
    ValueMatrix values;
};

/// Ex-post check of a division against the agents' valuations, exactly.
DivisionReport verify_division(const CakeDivision& division, std::span<const CakeValuation> valuations);

/// Agent-by-piece value matrix of a division.
ValueMatrix value_matrix(const CakeDivision& division, std::span<const CakeValuation> valuations);

}  // namespace fairdiv::cake
