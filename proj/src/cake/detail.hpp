#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/cake/procedures.hpp"

namespace fairdiv::cake::detail {

/// `cutter` halves `piece` by her own value; `chooser` takes the part she
/// weakly prefers (the left part on ties). Returns {cutter's part,
/// chooser's part}.
std::pair<Piece, Piece> cut_and_choose_on(QueryOracle& oracle, AgentId cutter, AgentId chooser, const Piece& piece,
                                          std::vector<std::string>& events);

/// Index of the candidate the agent values most among those still
/// available; the leftmost on ties.
std::size_t pick_best(QueryOracle& oracle, AgentId agent, std::span<const Piece> candidates,
                      std::span<const bool> available);

/// "player k"
std::string player(AgentId agent);

}  // namespace fairdiv::cake::detail
