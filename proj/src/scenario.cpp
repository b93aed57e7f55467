#include "fairdiv/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fairdiv::scenario {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw DomainError("scenario: " + where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("document", std::string("invalid JSON (") + e.what() + ")");
    }
}

void require_kind(const json& doc, const char* kind) {
    if (!doc.is_object()) fail("document", "top level must be an object");
    if (!doc.contains("kind")) return;
    if (!doc["kind"].is_string() || doc["kind"].get<std::string>() != kind) {
        fail("kind", "expected \"" + std::string(kind) + "\", got " + doc["kind"].dump());
    }
}

const json& field(const json& obj, const char* name, const std::string& where) {
    if (!obj.is_object() || !obj.contains(name)) fail(where, std::string("missing field \"") + name + "\"");
    return obj[name];
}

Rational rational(const json& value, const std::string& where) {
    if (value.is_number_float()) {
        fail(where, "floating-point literal " + value.dump() +
                        " is not allowed; write exact rationals as strings such as \"3/7\"");
    }
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_string()) {
        try {
            return Rational::parse(value.get<std::string>());
        } catch (const DomainError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a rational string, got " + value.dump());
}

std::vector<Rational> rationals(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where, "expected an array of rationals");
    std::vector<Rational> out;
    for (std::size_t k = 0; k < value.size(); ++k) out.push_back(rational(value[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

std::string text(const json& value, const std::string& where) {
    if (!value.is_string()) fail(where, "expected a string, got " + value.dump());
    return value.get<std::string>();
}

std::uint64_t unsigned_integer(const json& value, const std::string& where) {
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
        fail(where, "expected a non-negative integer, got " + value.dump());
    }
    return value.get<std::uint64_t>();
}

bool boolean(const json& value, const std::string& where) {
    if (!value.is_boolean()) fail(where, "expected true or false, got " + value.dump());
    return value.get<bool>();
}

Bundle bundle(const json& value, const std::string& where) {
    if (!value.is_array()) fail(where, "expected an array of good ids");
    Bundle b;
    for (std::size_t k = 0; k < value.size(); ++k) {
        if (!b.insert(text(value[k], where + "[" + std::to_string(k) + "]")).second) {
            fail(where, "good " + value[k].dump() + " listed twice");
        }
    }
    return b;
}

/// Checks that agents are listed with ids 1..n in order.
const json& agent_list(const json& doc) {
    const json& agents = field(doc, "agents", "document");
    if (!agents.is_array() || agents.empty()) fail("agents", "expected a non-empty array");
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const std::string where = "agents[" + std::to_string(k) + "]";
        if (!agents[k].is_object()) fail(where, "expected an object");
        if (agents[k].contains("id") && unsigned_integer(agents[k]["id"], where + ".id") != k + 1) {
            fail(where + ".id", "agents must be numbered 1..n in order");
        }
    }
    return agents;
}

template <typename F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const DomainError& e) {
        const std::string message = e.what();
        if (message.rfind("scenario:", 0) == 0) throw;
        fail(where, message);
    }
}

BundleValuation bundle_valuation(const json& value, const Bundle& goods, const std::string& where) {
    if (!value.is_object()) fail(where, "expected a valuation object");
    auto check_goods = [&](const Bundle& b, const std::string& at) {
        for (const auto& g : b) {
            if (!goods.contains(g)) fail(at, "unknown good '" + g + "'");
        }
    };
    if (value.contains("additive")) {
        const json& table = value["additive"];
        if (!table.is_object()) fail(where + ".additive", "expected an object mapping goods to rationals");
        std::map<Good, Rational> values;
        for (const auto& [good, v] : table.items()) {
            check_goods({good}, where + ".additive");
            values.emplace(good, rational(v, where + ".additive." + good));
        }
        return BundleValuation::additive(std::move(values));
    }
    if (value.contains("constant")) return BundleValuation::constant(rational(value["constant"], where + ".constant"));
    if (value.contains("per_item")) return BundleValuation::per_item(rational(value["per_item"], where + ".per_item"));
    if (value.contains("table")) {
        const json& rows = value["table"];
        if (!rows.is_array()) fail(where + ".table", "expected an array of {bundle, value} rows");
        std::map<Bundle, Rational> entries;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::string at = where + ".table[" + std::to_string(k) + "]";
            Bundle b = bundle(field(rows[k], "bundle", at), at + ".bundle");
            check_goods(b, at + ".bundle");
            if (!entries.emplace(std::move(b), rational(field(rows[k], "value", at), at + ".value")).second) {
                fail(at, "bundle listed twice");
            }
        }
        const Rational fallback = value.contains("default") ? rational(value["default"], where + ".default") : Rational(0);
        return BundleValuation::table(std::move(entries), fallback);
    }
    fail(where, "expected one of \"additive\", \"constant\", \"per_item\", \"table\"");
}

AxiomWitness witness(const json& value, const std::string& where) {
    AxiomWitness w;
    w.u = rationals(field(value, "u", where), where + ".u");
    w.v = rationals(field(value, "v", where), where + ".v");
    if (value.contains("w")) w.w = rationals(value["w"], where + ".w");
    if (value.contains("i")) w.i = unsigned_integer(value["i"], where + ".i");
    if (value.contains("j")) w.j = unsigned_integer(value["j"], where + ".j");
    if (value.contains("lambda")) w.lambda = rational(value["lambda"], where + ".lambda");
    if (value.contains("pace")) {
        const json& pace = value["pace"];
        auto xs = rationals(field(pace, "xs", where + ".pace"), where + ".pace.xs");
        auto ys = rationals(field(pace, "ys", where + ".pace"), where + ".pace.ys");
        w.pace = wrap(where + ".pace", [&] { return PiecewiseLinearMap(std::move(xs), std::move(ys)); });
    }
    return w;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("scenario: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CakeScenario parse_cake(std::string_view source) {
    const json doc = parse_json(source);
    require_kind(doc, "cake");
    CakeScenario s;
    const json& agents = agent_list(doc);
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const std::string where = "agents[" + std::to_string(k) + "]";
        auto breakpoints = rationals(field(agents[k], "breakpoints", where), where + ".breakpoints");
        auto densities = rationals(field(agents[k], "densities", where), where + ".densities");
        s.valuations.push_back(
            wrap(where, [&] { return cake::CakeValuation(std::move(breakpoints), std::move(densities)); }));
    }
    if (doc.contains("procedure")) {
        s.procedure = wrap("procedure", [&] { return cake::parse_procedure(text(doc["procedure"], "procedure")); });
    }
    if (doc.contains("contiguous")) s.contiguous = boolean(doc["contiguous"], "contiguous");
    return s;
}

AllocationProblem parse_allocation(std::string_view source) {
    const json doc = parse_json(source);
    require_kind(doc, "indivisible");
    AllocationProblem p;
    p.goods = bundle(field(doc, "goods", "document"), "goods");
    const json& agents = agent_list(doc);
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const std::string where = "agents[" + std::to_string(k) + "]";
        XorBid bid{k + 1, {}};
        const json& atoms = agents[k].contains("atoms") ? agents[k]["atoms"] : json::array();
        if (!atoms.is_array()) fail(where + ".atoms", "expected an array of {bundle, utility} atoms");
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const std::string at = where + ".atoms[" + std::to_string(a) + "]";
            bid.atoms.push_back({bundle(field(atoms[a], "bundle", at), at + ".bundle"),
                                 rational(field(atoms[a], "utility", at), at + ".utility")});
        }
        p.bids.push_back(std::move(bid));
    }
    if (doc.contains("criterion")) {
        p.criterion = wrap("criterion", [&] { return Criterion::parse(text(doc["criterion"], "criterion")); });
    }
    if (doc.contains("complete")) p.complete = boolean(doc["complete"], "complete");
    if (doc.contains("nash_unassigned")) {
        const std::string mode = text(doc["nash_unassigned"], "nash_unassigned");
        if (mode == "zero") {
            p.nash_unassigned = NashUnassigned::Zero;
        } else if (mode == "exclude") {
            p.nash_unassigned = NashUnassigned::Exclude;
        } else {
            fail("nash_unassigned", "expected \"zero\" or \"exclude\", got \"" + mode + "\"");
        }
    }
    wrap("document", [&] {
        validate(p);
        return 0;
    });
    return p;
}

NegotiationScenario parse_negotiation(std::string_view source) {
    const json doc = parse_json(source);
    require_kind(doc, "negotiation");
    const Bundle goods = bundle(field(doc, "goods", "document"), "goods");
    const json& agents = agent_list(doc);
    std::vector<BundleValuation> valuations;
    for (std::size_t k = 0; k < agents.size(); ++k) {
        const std::string where = "agents[" + std::to_string(k) + "]";
        valuations.push_back(bundle_valuation(field(agents[k], "valuation", where), goods, where + ".valuation"));
    }
    std::optional<GoodsAllocation> initial;
    if (doc.contains("initial")) {
        const json& rows = doc["initial"];
        if (!rows.is_array() || rows.size() != agents.size()) {
            fail("initial", "expected one bundle per agent (" + std::to_string(agents.size()) + ")");
        }
        std::vector<Bundle> bundles;
        for (std::size_t k = 0; k < rows.size(); ++k) bundles.push_back(bundle(rows[k], "initial[" + std::to_string(k) + "]"));
        initial = wrap("initial", [&] { return GoodsAllocation(goods, std::move(bundles)); });
    } else {
        initial = GoodsAllocation::all_to_first(goods, agents.size());
    }
    NegotiationScenario s{std::move(valuations), std::move(*initial), std::nullopt, std::nullopt,
                          PaymentPolicy::EqualSurplus};
    if (doc.contains("generator")) {
        s.generator = wrap("generator", [&] { return parse_generator(text(doc["generator"], "generator")); });
    }
    if (doc.contains("seed")) s.seed = unsigned_integer(doc["seed"], "seed");
    if (doc.contains("payment_policy")) {
        s.policy = wrap("payment_policy", [&] { return parse_payment_policy(text(doc["payment_policy"], "payment_policy")); });
    }
    return s;
}

WelfareScenario parse_welfare(std::string_view source) {
    const json doc = parse_json(source);
    require_kind(doc, "welfare");
    WelfareScenario s;
    if (doc.contains("swo")) s.swo = text(doc["swo"], "swo");
    if (doc.contains("witnesses")) {
        const json& rows = doc["witnesses"];
        if (!rows.is_array()) fail("witnesses", "expected an array");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::string where = "witnesses[" + std::to_string(k) + "]";
            const Axiom axiom = wrap(where + ".axiom", [&] { return parse_axiom(text(field(rows[k], "axiom", where), where + ".axiom")); });
            s.witnesses.emplace_back(axiom, witness(rows[k], where));
        }
    }
    return s;
}

}  // namespace fairdiv::scenario
