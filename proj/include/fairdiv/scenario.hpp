#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairdiv/axioms.hpp"
#include "fairdiv/cake/procedures.hpp"
#include "fairdiv/indivisible.hpp"
#include "fairdiv/negotiation.hpp"

// JSON scenario files. Every number that is not a count, id or seed is a
// rational written as a string ("3/7", "-2", "5"); bare integers are also
// accepted, floating-point literals are rejected.
namespace fairdiv::scenario {

struct CakeScenario {
    std::vector<cake::CakeValuation> valuations;
    std::optional<cake::Procedure> procedure;
    bool contiguous = false;
};

struct NegotiationScenario {
    std::vector<BundleValuation> valuations;
    GoodsAllocation initial;
    std::optional<DealGenerator> generator;
    std::optional<std::uint64_t> seed;
    PaymentPolicy policy = PaymentPolicy::EqualSurplus;
};

struct WelfareScenario {
    std::optional<std::string> swo;
    std::vector<std::pair<Axiom, AxiomWitness>> witnesses;
};

/// Contents of a file; throws DomainError if it cannot be read.
std::string read_file(const std::string& path);

/// Each parser throws DomainError naming the offending field and the
/// violated model condition.
CakeScenario parse_cake(std::string_view text);
AllocationProblem parse_allocation(std::string_view text);
NegotiationScenario parse_negotiation(std::string_view text);
WelfareScenario parse_welfare(std::string_view text);

}  // namespace fairdiv::scenario
