// icode: command-line front end for the indexcode library.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "indexcode/generate.hpp"
#include "indexcode/report.hpp"

using namespace indexcode;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

struct Globals {
    bool json = false;
    bool trace = false;
    bool no_normalize = false;
    bool strict = false;
    std::size_t max_oracle_bits = kDefaultOracleBits;
    std::uint64_t seed = 1;
};

// Thrown after a diagnostic has been printed; carries the exit code.
struct Exit {
    int code;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        throw Exit{kExitFailure};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Loaded {
    Instance inst;
    std::vector<std::string> warnings;
};

Loaded load(const std::string& path, const Globals& g) {
    const std::string text = read_input(path);
    try {
        Instance raw = parse_instance(text);
        if (g.no_normalize) return {raw, {}};
        Normalized n = normalize(raw);
        for (const auto& w : n.warnings) std::cerr << "warning: " << w << "\n";
        return {std::move(n.instance), std::move(n.warnings)};
    } catch (const InstanceError& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        throw Exit{kExitParse};
    } catch (const GuardError& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        throw Exit{g.strict ? kExitGuard : kExitFailure};
    }
}

json decoder_list(DecoderSet set) { return set.members(); }

json rational_json(const Rational& r) {
    return {{"numerator", numerator(r).convert_to<long long>()},
            {"denominator", denominator(r).convert_to<long long>()},
            {"fraction", fraction_string(r)},
            {"decimal", decimal_string(r)}};
}

json instance_json(const Instance& inst) {
    json bits = json::array();
    for (std::size_t k = 0; k < inst.size(); ++k) {
        const BitSpec& b = inst.bit(k);
        bits.push_back({{"id", k + 1}, {"label", b.label}, {"need", decoder_list(b.need)}, {"has", decoder_list(b.has)}});
    }
    return {{"decoders", inst.decoders()}, {"bits", bits}};
}

json classification_json(const Classification& c) {
    return {{"dag", c.is_dag}, {"directed_cycle", c.is_directed_cycle}, {"gm2_form", c.is_gm2_form}, {"unicast", c.is_unicast}};
}

json chain_json(const ChainWitness& w) {
    return {{"value", w.value}, {"permutation", w.permutation}, {"terms", w.terms}};
}

json table_json(const Instance& inst, const MessageTable& table) {
    json out = json::array();
    for (const Message& msg : table.messages()) {
        std::size_t worst = 0;
        for (int d : msg.subset.members()) worst = std::max(worst, message_rate(inst, msg, d));
        json comps = json::array();
        for (const Component& c : msg.components) {
            json labels = json::array();
            for (std::size_t k : c.bits) labels.push_back(inst.label(k));
            comps.push_back({{"bits", labels}, {"excess", c.excess}, {"origin", decoder_list(c.origin)}});
        }
        out.push_back({{"subset", decoder_list(msg.subset)}, {"rate", worst}, {"components", comps}});
    }
    return out;
}

json trace_json(const Instance& inst, const Trace& trace) {
    json out = json::array();
    for (const TraceEvent& e : trace) {
        switch (e.kind) {
            case TraceKind::placed:
                out.push_back({{"kind", "placed"}, {"bit", inst.label(e.bit)}, {"to", decoder_list(e.to)}});
                break;
            case TraceKind::promoted:
                out.push_back({{"kind", "promoted"},
                               {"bit", inst.label(e.bit)},
                               {"from", decoder_list(e.from)},
                               {"to", decoder_list(e.to)},
                               {"i_star", e.min_decoder},
                               {"j_star", e.max_decoder}});
                break;
            case TraceKind::xored:
                out.push_back({{"kind", "xored"},
                               {"at", decoder_list(e.to)},
                               {"keep", inst.label(e.bit)},
                               {"absorb", inst.label(e.other)}});
                break;
        }
    }
    return out;
}

json theta_json(const Instance& inst, const ThetaTable& theta) {
    json out = json::array();
    for (const auto& [subset, row] : theta.rows()) {
        for (const auto& [k, value] : row) {
            out.push_back({{"subset", decoder_list(subset)}, {"bit", inst.label(k)}, {"theta", fraction_string(value)}});
        }
    }
    return out;
}

json code_json(const LinearCode& code) {
    return {{"rank", code.rank()}, {"rows", code.row_strings()}, {"pivots", code.pivots}};
}

std::string permutation_text(const std::vector<int>& perm) {
    std::string out = "(";
    for (std::size_t i = 0; i < perm.size(); ++i) out += (i ? "," : "") + std::to_string(perm[i]);
    return out + ")";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_analyze(const std::string& path, const Globals& g) {
    Loaded l = load(path, g);
    const Classification c = classify(l.inst);
    if (g.json) {
        emit({{"instance", instance_json(l.inst)},
              {"m", l.inst.decoders()},
              {"s", l.inst.size()},
              {"classification", classification_json(c)},
              {"warnings", l.warnings}});
        return kExitOk;
    }
    std::cout << std::boolalpha << "m=" << l.inst.decoders() << " s=" << l.inst.size() << " gm2_form=" << c.is_gm2_form
              << " dag=" << c.is_dag << " directed_cycle=" << c.is_directed_cycle << " unicast=" << c.is_unicast << "\n";
    for (const auto& [missing, bits] : group_by_absence(l.inst)) {
        std::cout << "S" << missing.str() << ":";
        for (std::size_t k : bit_indices(bits)) std::cout << ' ' << l.inst.label(k);
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_bound(const std::string& path, const Globals& g) {
    Loaded l = load(path, g);
    const ChainWitness w = dsm_plus_dp(l.inst);
    if (g.json) {
        emit({{"lower", chain_json(w)}});
        return kExitOk;
    }
    std::cout << "lower " << w.value << " order=" << permutation_text(w.permutation) << " terms=(";
    for (std::size_t i = 0; i < w.terms.size(); ++i) std::cout << (i ? "," : "") << w.terms[i];
    std::cout << ")\n";
    return kExitOk;
}

int cmd_capm(const std::string& path, const Globals& g) {
    Loaded l = load(path, g);
    const CapmResult r = run_capm(l.inst);
    const Feasibility f = verify_feasible(l.inst, r.table);
    if (g.json) {
        json out = {{"rate", r.rate},
                    {"rate_after_step1", r.rate_after_step1},
                    {"rate_after_step2", r.rate_after_step2},
                    {"feasible", f.ok},
                    {"messages", table_json(l.inst, r.table)}};
        if (g.trace) out["trace"] = trace_json(l.inst, r.trace);
        emit(out);
        return kExitOk;
    }
    std::cout << "capm " << r.rate << " (step1 " << r.rate_after_step1 << ", step2 " << r.rate_after_step2 << ")\n";
    std::cout << render_table(l.inst, r.table);
    if (g.trace) std::cout << render_trace(l.inst, r.trace);
    if (!f.ok) std::cerr << "error: decoder " << f.decoder << " cannot recover " << l.inst.label(f.bit) << "\n";
    return f.ok ? kExitOk : kExitFailure;
}

int cmd_scapm(const std::string& path, const Globals& g) {
    Loaded l = load(path, g);
    const ScapmResult r = run_scapm(l.inst);
    const Feasibility f = verify_feasible(r.plan.instance, r.plan.table);
    if (g.json) {
        json out = {{"rate", rational_json(r.rate)},
                    {"t", r.t},
                    {"feasible", f.ok},
                    {"theta", theta_json(l.inst, r.theta)},
                    {"messages", table_json(r.plan.instance, r.plan.table)}};
        if (g.trace) {
            json promotions = json::array();
            for (const ThetaEvent& e : r.theta_trace) {
                promotions.push_back({{"bit", l.inst.label(e.bit)},
                                      {"from", decoder_list(e.from)},
                                      {"amount", fraction_string(e.amount)},
                                      {"entire", e.entire},
                                      {"i_star", e.min_decoder},
                                      {"j_star", e.max_decoder}});
            }
            out["theta_trace"] = promotions;
            out["xor_trace"] = trace_json(r.plan.instance, r.xor_trace);
        }
        emit(out);
        return kExitOk;
    }
    std::cout << "scapm " << fraction_string(r.rate) << " = " << decimal_string(r.rate) << " t=" << r.t << "\n";
    std::cout << render_theta(l.inst, r.theta);
    if (g.trace) {
        std::cout << render_theta_trace(l.inst, r.theta_trace);
        std::cout << render_table(r.plan.instance, r.plan.table);
        std::cout << render_trace(r.plan.instance, r.xor_trace);
    }
    if (!f.ok) std::cerr << "error: decoder " << f.decoder << " cannot recover " << r.plan.instance.label(f.bit) << "\n";
    return f.ok ? kExitOk : kExitFailure;
}

int cmd_exact(const std::string& path, const Globals& g) {
    Loaded l = load(path, g);
    OracleResult r;
    try {
        r = exact_scalar_linear(l.inst, g.max_oracle_bits);
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return g.strict ? kExitGuard : kExitFailure;
    }
    if (g.json) {
        emit({{"rate", r.rate}, {"witness", code_json(r.witness)}, {"visited", r.visited}});
        return kExitOk;
    }
    std::cout << "exact " << r.rate << " (scalar linear over GF(2), " << r.visited << " subspaces visited)\n";
    for (const auto& row : r.witness.row_strings()) std::cout << row << "\n";
    return kExitOk;
}

json report_json(const Instance& inst, const RateReport& r) {
    json out = {{"m", r.decoders},
                {"s", r.bits},
                {"classification", classification_json(r.classification)},
                {"lower", chain_json(r.lower)},
                {"capm", {{"rate", r.capm.rate}, {"messages", r.capm.table.messages().size()}}},
                {"scapm", {{"rate", rational_json(r.scapm.rate)}, {"t", r.scapm.t}}},
                {"certified_optimal", r.certified_optimal},
                {"certificate_kind", certificate_name(r.certificate)},
                {"notes", r.notes}};
    if (r.oracle) {
        out["oracle"] = {{"rate", r.oracle->rate}, {"witness", code_json(r.oracle->witness)}};
    } else {
        out["oracle"] = nullptr;
        out["oracle_skipped"] = r.oracle_skipped;
    }
    if (r.optimal_rate) out["optimal_rate"] = rational_json(*r.optimal_rate);
    if (r.gm2) out["gm2_form"] = {{"rate", r.gm2->rate}, {"argmax", r.gm2->argmax}, {"per_decoder", r.gm2->per_decoder}};
    if (r.dag) out["dag"] = {{"rate", r.dag->rate}, {"witness", r.dag->witness}};
    if (r.directed_cycle) out["directed_cycle"] = *r.directed_cycle;
    if (r.no_excess) out["no_excess"] = *r.no_excess;
    (void)inst;
    return out;
}

int cmd_reference_suite(const Globals& g) {
    const auto rows = run_reference_suite();
    bool ok = true;
    json out = json::array();
    for (const SuiteRow& row : rows) {
        ok = ok && row.ok;
        if (g.json) {
            out.push_back({{"fixture", row.fixture},
                           {"quantity", row.quantity},
                           {"expected", row.expected},
                           {"actual", row.actual},
                           {"ok", row.ok}});
        } else {
            std::cout << (row.ok ? "ok   " : "FAIL ") << row.fixture << " " << row.quantity << " expected=" << row.expected
                      << " actual=" << row.actual << "\n";
        }
    }
    if (g.json) emit({{"rows", out}, {"ok", ok}});
    return ok ? kExitOk : kExitFailure;
}

int cmd_check(const std::string& path, bool suite, bool skip_oracle, const Globals& g) {
    if (suite) return cmd_reference_suite(g);
    if (path.empty()) {
        std::cerr << "error: check needs an instance path or --paper-suite\n";
        return kExitFailure;
    }
    Loaded l = load(path, g);
    const RateReport r = check_instance(l.inst, {!skip_oracle, g.max_oracle_bits});
    if (r.guard_violation) std::cerr << "warning: exact search skipped: " << r.oracle_skipped << "\n";
    if (g.json) {
        json out = report_json(l.inst, r);
        out["warnings"] = l.warnings;
        if (g.trace) out["capm_trace"] = trace_json(l.inst, r.capm.trace);
        emit(out);
    } else {
        std::cout << render_report(l.inst, r);
        if (g.trace) std::cout << render_trace(l.inst, r.capm.trace);
    }
    return (r.guard_violation && g.strict) ? kExitGuard : kExitOk;
}

int cmd_generate(const std::string& kind, int m, std::size_t s, const std::string& name, const std::string& out_path,
                 const Globals& g) {
    Instance inst;
    try {
        if (kind == "cycle") {
            inst = directed_cycle(m);
        } else if (kind == "undirected-cycle") {
            inst = undirected_cycle(m);
        } else if (kind == "dag") {
            inst = random_dag(m, s, g.seed);
        } else if (kind == "gm2") {
            inst = random_gm2(m, s, g.seed);
        } else if (kind == "random") {
            inst = random_instance(m, s, g.seed);
        } else if (kind == "fixture") {
            inst = parse_instance(reference_fixture(name).text);
        } else {
            std::cerr << "error: unknown kind '" << kind << "'\n";
            return kExitFailure;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    const std::string text = g.json ? instance_json(inst).dump(2) + "\n" : render_instance(inst);
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!(out << text)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitFailure;
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds, heuristics and exact rates for groupcast index coding"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--trace", g.trace, "Emit step traces");
    app.add_flag("--no-normalize", g.no_normalize, "Skip bit purging and decoder merging");
    app.add_flag("--strict", g.strict, "Exit 3 on guard violations");
    app.add_option("--max-oracle-bits", g.max_oracle_bits, "Largest s for the exact search")
        ->check(CLI::Range(std::size_t{0}, kMaxOracleBits));
    app.add_option("--seed", g.seed, "Generator seed");

    std::string path;
    auto* analyze = app.add_subcommand("analyze", "Classify an instance");
    analyze->add_option("path", path, "Instance file ('-' for stdin)")->required();
    auto* bound = app.add_subcommand("bound", "Chain lower bound with witness ordering");
    bound->add_option("path", path)->required();
    auto* capm = app.add_subcommand("capm", "Integer partition-multicast heuristic");
    capm->add_option("path", path)->required();
    auto* scapm = app.add_subcommand("scapm", "Fractional heuristic with exact rationals");
    scapm->add_option("path", path)->required();
    auto* exact = app.add_subcommand("exact", "Exhaustive scalar linear code search over GF(2)");
    exact->add_option("path", path)->required();

    auto* check = app.add_subcommand("check", "Full report with optimality certificate");
    bool suite = false;
    bool skip_oracle = false;
    check->add_option("path", path);
    check->add_flag("--paper-suite", suite, "Run the bundled reference fixtures against pinned values");
    check->add_flag("--no-oracle", skip_oracle, "Skip the exact search");

    auto* generate = app.add_subcommand("generate", "Write a generated or bundled instance");
    std::string kind;
    int m = 4;
    std::size_t s = 8;
    std::string name;
    std::string out_path;
    generate->add_option("kind", kind, "cycle | undirected-cycle | dag | gm2 | random | fixture")->required();
    generate->add_option("-m,--decoders", m, "Decoder count");
    generate->add_option("-s,--bits", s, "Bit count");
    generate->add_option("--name", name, "Fixture name for kind=fixture");
    generate->add_option("-o,--output", out_path, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors share the bad-input exit code
    }

    try {
        if (*analyze) return cmd_analyze(path, g);
        if (*bound) return cmd_bound(path, g);
        if (*capm) return cmd_capm(path, g);
        if (*scapm) return cmd_scapm(path, g);
        if (*exact) return cmd_exact(path, g);
        if (*check) return cmd_check(path, suite, skip_oracle, g);
        if (*generate) return cmd_generate(kind, m, s, name, out_path, g);
    } catch (const Exit& e) {
        return e.code;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return g.strict ? kExitGuard : kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
