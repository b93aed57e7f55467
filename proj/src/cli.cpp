#include "fairdiv/cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "fairdiv/scenario.hpp"
#include "json.hpp"

namespace fairdiv::cli {

namespace {

using ojson = nlohmann::ordered_json;

enum class Format { Table, Json };

ojson strings(std::span<const Rational> values) {
    ojson out = ojson::array();
    for (const auto& v : values) out.push_back(v.to_string());
    return out;
}

ojson bundle_json(const Bundle& b) {
    ojson out = ojson::array();
    for (const auto& g : b) out.push_back(g);
    return out;
}

ojson bundles_json(const GoodsAllocation& a) {
    ojson out = ojson::array();
    for (const auto& b : a.bundles()) out.push_back(bundle_json(b));
    return out;
}

std::string bundles_text(const GoodsAllocation& a) {
    std::string out;
    for (std::size_t i = 0; i < a.bundles().size(); ++i) {
        if (i) out += " ";
        out += format_bundle(a.bundles()[i]);
    }
    return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<Rational> parse_vector(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    if (out.empty()) throw DomainError("--vector: expected a comma-separated list of rationals");
    return out;
}

ojson witness_json(const AxiomWitness& w) {
    ojson out{{"u", strings(w.u)}, {"v", strings(w.v)}};
    if (!w.w.empty()) out["w"] = strings(w.w);
    if (w.i != 0) out["i"] = w.i;
    if (w.j != 0) out["j"] = w.j;
    if (!w.lambda.is_zero()) out["lambda"] = w.lambda.to_string();
    if (w.pace) out["pace"] = {{"xs", strings(w.pace->xs())}, {"ys", strings(w.pace->ys())}};
    return out;
}

// welfare eval ---------------------------------------------------------------

struct WelfareEvalArgs {
    std::string cuf;
    std::string vector;
};

void welfare_eval(const WelfareEvalArgs& a, Format format, std::ostream& out) {
    const Cuf cuf = Cuf::parse(a.cuf);
    const auto u = parse_vector(a.vector);
    const Rational value = collective_utility(cuf, u);
    if (format == Format::Json) {
        out << ojson{{"cuf", cuf.name()}, {"vector", strings(u)}, {"value", value.to_string()}}.dump(2) << "\n";
    } else {
        out << value << "\n";
    }
}

// welfare axioms -------------------------------------------------------------

struct WelfareAxiomsArgs {
    std::string swo;
    std::string axiom;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::size_t min_n = 2;
    std::size_t max_n = 6;
    std::string scenario;
};

void welfare_axioms(const WelfareAxiomsArgs& a, Format format, std::ostream& out) {
    std::vector<AxiomWitness> fixed;
    std::string swo_name = a.swo;
    const Axiom axiom = parse_axiom(a.axiom);
    if (!a.scenario.empty()) {
        auto fixture = scenario::parse_welfare(scenario::read_file(a.scenario));
        if (swo_name.empty() && fixture.swo) swo_name = *fixture.swo;
        for (auto& [ax, w] : fixture.witnesses) {
            if (ax == axiom) fixed.push_back(std::move(w));
        }
    }
    if (swo_name.empty()) throw DomainError("welfare axioms: --swo is required (or \"swo\" in the scenario)");
    if (a.min_n < 1 || a.max_n < a.min_n) throw DomainError("welfare axioms: need 1 <= --min-n <= --max-n");
    const Swo swo = Swo::parse(swo_name);
    const AxiomSurvey survey = survey_axiom(swo, axiom, a.samples, a.seed, fixed, a.min_n, a.max_n);
    const bool holds = survey.violations == 0;

    if (format == Format::Json) {
        ojson report{{"swo", swo.name()},     {"axiom", to_string(axiom)},     {"samples", a.samples},
                     {"seed", a.seed},        {"fixed_witnesses", fixed.size()}, {"checked", survey.checked},
                     {"violations", survey.violations}, {"verdict", holds ? "holds" : "violated"}};
        if (survey.first_violation) {
            report["first_violation"] = {{"lhs", strings(survey.first_violation->lhs)},
                                         {"rhs", strings(survey.first_violation->rhs)},
                                         {"detail", survey.first_violation->detail},
                                         {"witness", witness_json(*survey.first_violation_witness)}};
        }
        out << report.dump(2) << "\n";
        return;
    }
    out << "swo: " << swo.name() << "\n"
        << "axiom: " << to_string(axiom) << "\n"
        << "checked: " << survey.checked << " (" << fixed.size() << " fixed, " << a.samples << " random, seed " << a.seed
        << ")\n"
        << "violations: " << survey.violations << "\n"
        << "verdict: " << (holds ? "holds on every witness" : "violated") << "\n";
    if (survey.first_violation) {
        out << "first violation: " << format_vector(survey.first_violation->lhs) << " vs "
            << format_vector(survey.first_violation->rhs) << "\n"
            << "  " << survey.first_violation->detail << "\n";
    }
}

// cake run -------------------------------------------------------------------

struct CakeRunArgs {
    std::string procedure;
    std::string scenario;
    bool verify = false;
    bool contiguous = false;
    bool log = false;
};

void cake_run(const CakeRunArgs& a, Format format, std::ostream& out) {
    const auto s = scenario::parse_cake(scenario::read_file(a.scenario));
    const cake::Procedure procedure = cake::parse_procedure(a.procedure);
    const bool contiguous = a.contiguous || s.contiguous;
    cake::CakeDivision d;
    std::optional<cake::StromquistRun> stromquist;
    if (procedure == cake::Procedure::Stromquist && s.valuations.size() == 3) {
        stromquist = cake::stromquist_run(s.valuations[0], s.valuations[1], s.valuations[2]);
        d = stromquist->division;
    } else {
        d = cake::run_procedure(procedure, s.valuations, contiguous);
    }
    std::optional<cake::DivisionReport> report;
    if (a.verify) report = cake::verify_division(d, s.valuations);

    if (format == Format::Json) {
        ojson pieces = ojson::array();
        for (std::size_t i = 0; i < d.pieces.size(); ++i) {
            ojson intervals = ojson::array();
            for (const auto& iv : d.pieces[i].intervals()) intervals.push_back({iv.lo.to_string(), iv.hi.to_string()});
            pieces.push_back({{"agent", i + 1}, {"piece", d.pieces[i].to_string()}, {"intervals", intervals}});
        }
        ojson j{{"procedure", cake::to_string(procedure)},
                {"agents", s.valuations.size()},
                {"pieces", pieces},
                {"cut_count", d.cut_count},
                {"knife_cuts", d.knife_cuts},
                {"mark_queries", d.mark_queries()},
                {"eval_queries", d.eval_queries()},
                {"events", d.events}};
        if (procedure == cake::Procedure::BanachKnaster) j["contiguous_mode"] = contiguous;
        if (stromquist) {
            j["referee"] = stromquist->referee.to_string();
            j["shouter"] = stromquist->shouter;
            j["knives"] = strings(stromquist->knives);
        }
        if (a.log) {
            ojson log = ojson::array();
            for (const auto& q : d.query_log) {
                log.push_back({{"agent", q.agent},
                               {"kind", q.kind == cake::CakeQuery::Kind::Mark ? "mark" : "eval"},
                               {"arguments", q.arguments},
                               {"answer", q.answer.to_string()}});
            }
            j["query_log"] = log;
        }
        if (report) {
            ojson values = ojson::array();
            for (const auto& row : report->values.value) values.push_back(strings(row));
            j["verify"] = {{"complete", report->complete},     {"proportional", report->proportional},
                           {"envy_free", report->envy_free},   {"contiguous", report->contiguous},
                           {"cut_count", report->cut_count},   {"values", values}};
        }
        out << j.dump(2) << "\n";
        return;
    }

    out << "procedure: " << cake::to_string(procedure) << "\n"
        << "agents: " << s.valuations.size() << "\n";
    for (std::size_t i = 0; i < d.pieces.size(); ++i) out << "player " << i + 1 << ": " << d.pieces[i].to_string() << "\n";
    out << "cuts: " << d.cut_count << " (knife cuts " << d.knife_cuts << ")\n"
        << "queries: " << d.mark_queries() << " mark, " << d.eval_queries() << " eval\n";
    for (const auto& e : d.events) out << "  " << e << "\n";
    if (a.log) {
        for (const auto& q : d.query_log) {
            out << "  query player " << q.agent << " " << (q.kind == cake::CakeQuery::Kind::Mark ? "mark " : "eval ")
                << q.arguments << " -> " << q.answer << "\n";
        }
    }
    if (report) {
        out << "verify: complete " << yes_no(report->complete) << ", proportional " << yes_no(report->proportional)
            << ", envy-free " << yes_no(report->envy_free) << ", contiguous " << yes_no(report->contiguous) << "\n";
        for (std::size_t i = 0; i < report->values.value.size(); ++i) {
            out << "  player " << i + 1 << " values pieces " << format_vector(report->values.value[i]) << "\n";
        }
    }
}

// alloc solve / oracle -------------------------------------------------------

struct AllocArgs {
    std::string scenario;
    std::string criterion;
    std::size_t node_limit = 0;
};

void alloc_report(const AllocArgs& a, bool oracle, Format format, std::ostream& out) {
    AllocationProblem problem = scenario::parse_allocation(scenario::read_file(a.scenario));
    if (!a.criterion.empty()) problem.criterion = Criterion::parse(a.criterion);
    const SolveResult r = oracle ? brute_force(problem) : solve(problem, SolveOptions{a.node_limit});

    if (format == Format::Json) {
        ojson assignment = ojson::array();
        for (std::size_t i = 0; i < r.assignment.size(); ++i) {
            ojson row{{"agent", i + 1}};
            if (r.assignment[i]) {
                row["atom"] = *r.assignment[i];
                row["bundle"] = bundle_json(problem.bids[i].atoms[*r.assignment[i]].bundle);
            } else {
                row["atom"] = nullptr;
                row["bundle"] = ojson::array();
            }
            row["utility"] = r.utilities[i].to_string();
            assignment.push_back(row);
        }
        ojson j{{"criterion", problem.criterion.name()},
                {"mode", problem.complete ? "complete" : "free-disposal"},
                {"method", oracle ? "brute-force" : "branch-and-bound"},
                {"certificate", to_string(r.certificate.kind)}};
        if (r.certificate.gap) j["gap"] = r.certificate.gap->to_string();
        j["objective"] = r.objective.to_string();
        j["assignment"] = assignment;
        j["utilities"] = strings(r.utilities);
        j["nodes"] = r.nodes;
        out << j.dump(2) << "\n";
        return;
    }
    out << "criterion: " << problem.criterion.name() << " (" << (problem.complete ? "complete" : "free disposal")
        << ", " << (oracle ? "brute force" : "branch and bound") << ")\n"
        << "certificate: " << to_string(r.certificate.kind);
    if (r.certificate.gap) out << " (gap " << *r.certificate.gap << ")";
    out << "\n";
    if (r.certificate.kind == Certificate::Kind::Infeasible) return;
    out << "objective: " << r.objective << "\n";
    for (std::size_t i = 0; i < r.assignment.size(); ++i) {
        out << "agent " << i + 1 << ": ";
        if (r.assignment[i]) {
            out << format_bundle(problem.bids[i].atoms[*r.assignment[i]].bundle) << " (atom " << *r.assignment[i] << ")";
        } else {
            out << "nothing";
        }
        out << " utility " << r.utilities[i] << "\n";
    }
    out << "utilities: " << format_vector(r.utilities) << "\n"
        << "nodes: " << r.nodes << "\n";
}

// negotiate run --------------------------------------------------------------

struct NegotiateArgs {
    std::string scenario;
    std::string generator;
    std::optional<std::uint64_t> seed;
    std::string policy;
};

void negotiate_run(const NegotiateArgs& a, Format format, std::ostream& out) {
    const auto s = scenario::parse_negotiation(scenario::read_file(a.scenario));
    DealGenerator generator;
    if (!a.generator.empty()) {
        generator = parse_generator(a.generator);
    } else if (s.generator) {
        generator = *s.generator;
    } else {
        throw DomainError("negotiate run: --generator is required (or \"generator\" in the scenario)");
    }
    const std::uint64_t seed = a.seed ? *a.seed : s.seed.value_or(0);
    const PaymentPolicy policy = a.policy.empty() ? s.policy : parse_payment_policy(a.policy);

    const NegotiationState state = run_negotiation(s.initial, s.valuations, generator, seed, policy);

    UtilityVector utilities;
    for (std::size_t i = 0; i < s.valuations.size(); ++i) {
        utilities.push_back(s.valuations[i](state.allocation.bundle(i + 1)) - state.balance[i]);
    }
    const Rational welfare = utilitarian_welfare(s.valuations, state.allocation);
    std::optional<Rational> optimum;
    try {
        optimum = brute_force(exhaustive_problem(s.initial.goods(), s.valuations, Criterion::of(Cuf::utilitarian())))
                      .objective;
    } catch (const GuardExceeded&) {
    } catch (const DomainError&) {
    }

    if (format == Format::Json) {
        std::size_t step = 0;
        for (const auto& t : state.trace) {
            out << ojson{{"type", "deal"},
                         {"step", ++step},
                         {"before", bundles_json(t.deal.before())},
                         {"after", bundles_json(t.deal.after())},
                         {"payments", strings(t.payments.payments())},
                         {"welfare_before", t.welfare_before.to_string()},
                         {"welfare_after", t.welfare_after.to_string()}}
                       .dump()
                << "\n";
        }
        ojson summary{{"type", "summary"},
                      {"generator", to_string(generator)},
                      {"seed", seed},
                      {"payment_policy", to_string(policy)},
                      {"deals", state.trace.size()},
                      {"final", bundles_json(state.allocation)},
                      {"balance", strings(state.balance)},
                      {"utilities", strings(utilities)},
                      {"welfare", welfare.to_string()}};
        if (optimum) {
            summary["optimal_welfare"] = optimum->to_string();
            summary["gap"] = (*optimum - welfare).to_string();
        } else {
            summary["optimal_welfare"] = nullptr;
        }
        out << summary.dump() << "\n";
        return;
    }
    out << "generator: " << to_string(generator) << ", seed " << seed << ", payments " << to_string(policy) << "\n"
        << "initial: " << bundles_text(s.initial) << " welfare " << utilitarian_welfare(s.valuations, s.initial) << "\n";
    std::size_t step = 0;
    for (const auto& t : state.trace) {
        out << "deal " << ++step << ": " << bundles_text(t.deal.after()) << " welfare " << t.welfare_before << " -> "
            << t.welfare_after << " payments " << format_vector(t.payments.payments()) << "\n";
    }
    out << "final: " << bundles_text(state.allocation) << " welfare " << welfare << "\n"
        << "balance: " << format_vector(state.balance) << "\n"
        << "utilities: " << format_vector(utilities) << "\n";
    if (optimum) {
        out << "optimal welfare: " << *optimum << " (gap " << (*optimum - welfare) << ")\n";
    } else {
        out << "optimal welfare: not computed (instance too large to enumerate)\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact fair-division toolkit: welfare orderings, cake cutting, indivisible goods, negotiation",
                 "fairdiv"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format_name = "table";
    app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"table", "json"}));

    auto* welfare = app.add_subcommand("welfare", "Collective utility functions and axiom checks");
    welfare->require_subcommand(1);
    welfare->fallthrough();
    WelfareEvalArgs eval_args;
    auto* welfare_eval_cmd = welfare->add_subcommand("eval", "Evaluate a CUF on a utility vector");
    welfare_eval_cmd->fallthrough();
    welfare_eval_cmd->add_option("--cuf", eval_args.cuf, "util, egal, elit, rank:k, nash, owa:w1,w2,...")->required();
    welfare_eval_cmd->add_option("--vector", eval_args.vector, "Comma-separated rationals, e.g. 4,4 or 1/2,3")
        ->required()
        ->allow_extra_args(false);
    WelfareAxiomsArgs axioms_args;
    auto* welfare_axioms_cmd = welfare->add_subcommand("axioms", "Check an axiom on random and fixed witnesses");
    welfare_axioms_cmd->fallthrough();
    welfare_axioms_cmd->add_option("--swo", axioms_args.swo, "CUF name or leximin");
    welfare_axioms_cmd->add_option("--axiom", axioms_args.axiom, "Axiom name")->required();
    welfare_axioms_cmd->add_option("--samples", axioms_args.samples, "Random witnesses to draw");
    welfare_axioms_cmd->add_option("--seed", axioms_args.seed, "Random seed");
    welfare_axioms_cmd->add_option("--min-n", axioms_args.min_n, "Smallest number of agents");
    welfare_axioms_cmd->add_option("--max-n", axioms_args.max_n, "Largest number of agents");
    welfare_axioms_cmd->add_option("--scenario", axioms_args.scenario, "Welfare fixture with extra witnesses");

    auto* cake_cmd = app.add_subcommand("cake", "Cake-cutting procedures");
    cake_cmd->require_subcommand(1);
    cake_cmd->fallthrough();
    CakeRunArgs cake_args;
    auto* cake_run_cmd = cake_cmd->add_subcommand("run", "Run a procedure on a cake scenario");
    cake_run_cmd->fallthrough();
    cake_run_cmd->add_option("--procedure", cake_args.procedure, "Procedure name")->required();
    cake_run_cmd->add_option("--scenario", cake_args.scenario, "Cake scenario file")->required();
    cake_run_cmd->add_flag("--verify", cake_args.verify, "Check the division ex post");
    cake_run_cmd->add_flag("--contiguous", cake_args.contiguous, "Banach-Knaster with contiguous pieces");
    cake_run_cmd->add_flag("--log", cake_args.log, "Include the full query log");

    auto* alloc_cmd = app.add_subcommand("alloc", "Allocation of indivisible goods under XOR bids");
    alloc_cmd->require_subcommand(1);
    alloc_cmd->fallthrough();
    AllocArgs alloc_args;
    auto* solve_cmd = alloc_cmd->add_subcommand("solve", "Branch-and-bound optimum");
    solve_cmd->fallthrough();
    solve_cmd->add_option("--scenario", alloc_args.scenario, "Allocation scenario file")->required();
    solve_cmd->add_option("--criterion", alloc_args.criterion, "Override the scenario's criterion");
    solve_cmd->add_option("--node-limit", alloc_args.node_limit, "Stop after this many nodes (0 = no limit)");
    auto* oracle_cmd = alloc_cmd->add_subcommand("oracle", "Brute-force optimum");
    oracle_cmd->fallthrough();
    oracle_cmd->add_option("--scenario", alloc_args.scenario, "Allocation scenario file")->required();
    oracle_cmd->add_option("--criterion", alloc_args.criterion, "Override the scenario's criterion");

    auto* negotiate_cmd = app.add_subcommand("negotiate", "Distributed negotiation with side payments");
    negotiate_cmd->require_subcommand(1);
    negotiate_cmd->fallthrough();
    NegotiateArgs negotiate_args;
    auto* negotiate_run_cmd = negotiate_cmd->add_subcommand("run", "Negotiate until no IR deal remains");
    negotiate_run_cmd->fallthrough();
    negotiate_run_cmd->add_option("--scenario", negotiate_args.scenario, "Negotiation scenario file")->required();
    negotiate_run_cmd->add_option("--generator", negotiate_args.generator, "any, one-good or swap");
    negotiate_run_cmd->add_option("--seed", negotiate_args.seed, "Seed for the deal search order");
    negotiate_run_cmd->add_option("--policy", negotiate_args.policy, "equal-surplus or involved-only");

    std::vector<const char*> argv{"fairdiv"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    const Format format = format_name == "json" ? Format::Json : Format::Table;
    try {
        if (*welfare_eval_cmd) welfare_eval(eval_args, format, out);
        if (*welfare_axioms_cmd) welfare_axioms(axioms_args, format, out);
        if (*cake_run_cmd) cake_run(cake_args, format, out);
        if (*solve_cmd) alloc_report(alloc_args, false, format, out);
        if (*oracle_cmd) alloc_report(alloc_args, true, format, out);
        if (*negotiate_run_cmd) negotiate_run(negotiate_args, format, out);
    } catch (const GuardExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitGuardExceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace fairdiv::cli
