#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fairdiv/axioms.hpp"
#include "fairdiv/cake/procedures.hpp"
#include "fairdiv/cli.hpp"
#include "fairdiv/indivisible.hpp"
#include "fairdiv/negotiation.hpp"
#include "fairdiv/scenario.hpp"

namespace py = pybind11;
using namespace fairdiv;

namespace {

// Rationals cross the boundary as strings; the Python layer turns them into
// fractions.Fraction.
using Text = std::vector<std::string>;

UtilityVector parse_vector(const Text& values) {
    UtilityVector u;
    for (const auto& v : values) u.push_back(Rational::parse(v));
    return u;
}

Text text(std::span<const Rational> values) {
    Text out;
    for (const auto& v : values) out.push_back(v.to_string());
    return out;
}

py::list bundles(const GoodsAllocation& allocation) {
    py::list out;
    for (const auto& b : allocation.bundles()) out.append(std::vector<std::string>(b.begin(), b.end()));
    return out;
}

py::dict solve_result(const AllocationProblem& problem, const SolveResult& r) {
    py::list assignment;
    for (std::size_t i = 0; i < r.assignment.size(); ++i) {
        if (r.assignment[i]) {
            const auto& bundle = problem.bids[i].atoms[*r.assignment[i]].bundle;
            assignment.append(std::vector<std::string>(bundle.begin(), bundle.end()));
        } else {
            assignment.append(py::none());
        }
    }
    py::dict d;
    d["criterion"] = problem.criterion.name();
    d["atoms"] = r.assignment;
    d["bundles"] = assignment;
    d["utilities"] = text(r.utilities);
    d["objective"] = r.objective.to_string();
    d["certificate"] = to_string(r.certificate.kind);
    d["gap"] = r.certificate.gap ? py::cast(r.certificate.gap->to_string()) : py::none();
    d["nodes"] = r.nodes;
    return d;
}

AllocationProblem allocation(const std::string& source, const std::optional<std::string>& criterion) {
    auto problem = scenario::parse_allocation(source);
    if (criterion) problem.criterion = Criterion::parse(*criterion);
    return problem;
}

py::dict cut_cake(const std::string& procedure, const std::vector<std::pair<Text, Text>>& agents, bool contiguous) {
    std::vector<cake::CakeValuation> valuations;
    for (const auto& [breakpoints, densities] : agents) {
        valuations.emplace_back(parse_vector(breakpoints), parse_vector(densities));
    }
    const auto division = cake::run_procedure(cake::parse_procedure(procedure), valuations, contiguous);
    const auto report = cake::verify_division(division, valuations);
    py::list pieces;
    for (const auto& piece : division.pieces) {
        py::list intervals;
        for (const auto& iv : piece.intervals()) intervals.append(py::make_tuple(iv.lo.to_string(), iv.hi.to_string()));
        pieces.append(intervals);
    }
    py::list values;
    for (const auto& row : report.values.value) values.append(text(row));
    py::dict d;
    d["procedure"] = procedure;
    d["pieces"] = pieces;
    d["cut_count"] = division.cut_count;
    d["knife_cuts"] = division.knife_cuts;
    d["mark_queries"] = report.mark_queries;
    d["eval_queries"] = report.eval_queries;
    d["proportional"] = report.proportional;
    d["envy_free"] = report.envy_free;
    d["contiguous"] = report.contiguous;
    d["values"] = values;
    d["events"] = division.events;
    return d;
}

py::dict negotiate(const std::string& source, const std::optional<std::string>& generator,
                   std::optional<std::uint64_t> seed, const std::optional<std::string>& policy) {
    auto s = scenario::parse_negotiation(source);
    const DealGenerator gen = generator ? parse_generator(*generator) : s.generator.value_or(DealGenerator::AnyImproving);
    const PaymentPolicy pol = policy ? parse_payment_policy(*policy) : s.policy;
    const auto state = run_negotiation(s.initial, s.valuations, gen, seed.value_or(s.seed.value_or(0)), pol);
    py::list trace;
    for (const auto& step : state.trace) {
        py::dict t;
        t["before"] = bundles(step.deal.before());
        t["after"] = bundles(step.deal.after());
        t["payments"] = text(step.payments.payments());
        t["welfare_before"] = step.welfare_before.to_string();
        t["welfare_after"] = step.welfare_after.to_string();
        trace.append(t);
    }
    py::dict d;
    d["generator"] = to_string(gen);
    d["policy"] = to_string(pol);
    d["trace"] = trace;
    d["allocation"] = bundles(state.allocation);
    d["balance"] = text(state.balance);
    d["welfare"] = utilitarian_welfare(s.valuations, state.allocation).to_string();
    return d;
}

py::dict survey(const std::string& swo, const std::string& axiom, std::size_t samples, std::uint64_t seed,
                std::size_t min_n, std::size_t max_n) {
    const auto s = survey_axiom(Swo::parse(swo), parse_axiom(axiom), samples, seed, {}, min_n, max_n);
    py::dict d;
    d["checked"] = s.checked;
    d["violations"] = s.violations;
    if (s.first_violation) {
        d["first_violation"] = py::make_tuple(text(s.first_violation->lhs), text(s.first_violation->rhs));
    } else {
        d["first_violation"] = py::none();
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact fair-division toolkit";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);

    m.def("collective_utility",
          [](const std::string& cuf, const Text& u) { return collective_utility(Cuf::parse(cuf), parse_vector(u)).to_string(); },
          py::arg("cuf"), py::arg("vector"));
    m.def("leximin_compare",
          [](const Text& u, const Text& v) { return to_string(leximin_compare(parse_vector(u), parse_vector(v))); },
          py::arg("u"), py::arg("v"));
    m.def("survey_axiom", &survey, py::arg("swo"), py::arg("axiom"), py::arg("samples") = 1000, py::arg("seed") = 1,
          py::arg("min_n") = 2, py::arg("max_n") = 6);
    m.def("run_cake", &cut_cake, py::arg("procedure"), py::arg("agents"), py::arg("contiguous") = false);
    m.def("solve",
          [](const std::string& source, const std::optional<std::string>& criterion, std::size_t node_limit) {
              const auto p = allocation(source, criterion);
              return solve_result(p, solve(p, SolveOptions{node_limit}));
          },
          py::arg("scenario"), py::arg("criterion") = py::none(), py::arg("node_limit") = 0);
    m.def("brute_force",
          [](const std::string& source, const std::optional<std::string>& criterion) {
              const auto p = allocation(source, criterion);
              return solve_result(p, brute_force(p));
          },
          py::arg("scenario"), py::arg("criterion") = py::none());
    m.def("negotiate", &negotiate, py::arg("scenario"), py::arg("generator") = py::none(), py::arg("seed") = py::none(),
          py::arg("policy") = py::none());
    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = cli::run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
