#include "indexcode/report.hpp"

#include <algorithm>
#include <sstream>

#include "indexcode/generate.hpp"

namespace indexcode {

std::string certificate_name(Certificate c) {
    switch (c) {
        case Certificate::bounds_met: return "bounds-met";
        case Certificate::gm2_form: return "gm2-form";
        case Certificate::dag: return "dag";
        case Certificate::directed_cycle: return "directed-cycle";
        case Certificate::no_excess: return "no-excess";
        case Certificate::none: return "none";
    }
    return "none";
}

RateReport check_instance(const Instance& inst, const CheckOptions& options) {
    RateReport r;
    r.decoders = inst.decoders();
    r.bits = inst.size();
    r.classification = classify(inst);
    r.lower = dsm_plus_dp(inst);
    r.capm = run_capm(inst);
    r.scapm = run_scapm(inst);

    if (options.run_oracle) {
        try {
            r.oracle = exact_scalar_linear(inst, options.max_oracle_bits);
        } catch (const GuardError& e) {
            r.oracle_skipped = e.what();
            r.guard_violation = true;
        }
    } else {
        r.oracle_skipped = "disabled";
    }

    if (r.classification.is_gm2_form) r.gm2 = gm2_rate(inst);
    if (r.classification.is_dag) r.dag = dag_analysis(inst);
    if (r.classification.is_directed_cycle) r.directed_cycle = directed_cycle_rate(inst.decoders());
    try {
        r.no_excess = no_excess_rate(inst);
    } catch (const PreconditionError&) {
    }

    const Rational best = std::min(Rational(r.capm.rate), r.scapm.rate);
    if (Rational(r.lower.value) == best) {
        r.certified_optimal = true;
        r.certificate = Certificate::bounds_met;
        r.optimal_rate = best;
    } else if (r.directed_cycle) {
        r.certificate = Certificate::directed_cycle;
        r.optimal_rate = Rational(*r.directed_cycle);
    } else if (r.dag) {
        r.certificate = Certificate::dag;
        r.optimal_rate = Rational(r.dag->rate);
    } else if (r.gm2) {
        r.certificate = Certificate::gm2_form;
        r.optimal_rate = Rational(r.gm2->rate);
    } else if (r.no_excess) {
        r.certificate = Certificate::no_excess;
        r.optimal_rate = Rational(*r.no_excess);
    }
    if (r.certificate != Certificate::none && r.certificate != Certificate::bounds_met) {
        r.certified_optimal = true;
        if (*r.optimal_rate != Rational(r.capm.rate)) {
            r.notes.push_back("closed form " + fraction_string(*r.optimal_rate) + " differs from the CAPM rate " +
                              std::to_string(r.capm.rate));
        }
    }
    if (!r.certified_optimal) {
        r.notes.push_back("not certified: lower bound " + std::to_string(r.lower.value) + " < best achievable " +
                          fraction_string(best) + "; a stronger (e.g. LP-based) bound may close the gap");
    }
    if (!r.certified_optimal && r.oracle && r.oracle->rate == r.lower.value) {
        r.notes.push_back("the GF(2) witness code of length " + std::to_string(r.oracle->rate) +
                          " meets the lower bound, so " + std::to_string(r.oracle->rate) + " is optimal");
    }
    if (r.oracle && Rational(r.oracle->rate) > r.scapm.rate) {
        r.notes.push_back("scalar linear optimum " + std::to_string(r.oracle->rate) + " exceeds the S-CAPM vector rate " +
                          fraction_string(r.scapm.rate));
    }
    return r;
}

std::string render_report(const Instance& inst, const RateReport& r) {
    std::ostringstream out;
    const auto& c = r.classification;
    out << "instance    m=" << r.decoders << " s=" << r.bits << " gm2_form=" << std::boolalpha << c.is_gm2_form
        << " dag=" << c.is_dag << " directed_cycle=" << c.is_directed_cycle << " unicast=" << c.is_unicast << "\n";
    out << "lower       " << r.lower.value << "  order=(";
    for (std::size_t i = 0; i < r.lower.permutation.size(); ++i) out << (i ? "," : "") << r.lower.permutation[i];
    out << ")\n";
    out << "capm        " << r.capm.rate << "  (step1 " << r.capm.rate_after_step1 << ", step2 " << r.capm.rate_after_step2
        << ", messages " << r.capm.table.messages().size() << ")\n";
    out << "scapm       " << fraction_string(r.scapm.rate) << " = " << decimal_string(r.scapm.rate) << "  t=" << r.scapm.t
        << "\n";
    if (r.oracle) {
        out << "exact       " << r.oracle->rate << "  (scalar linear, GF(2), " << r.oracle->visited << " subspaces)\n";
    } else {
        out << "exact       skipped: " << r.oracle_skipped << "\n";
    }
    if (r.gm2) out << "gm2_form    " << r.gm2->rate << "  argmax=" << r.gm2->argmax << "\n";
    if (r.dag) {
        out << "dag         " << r.dag->rate << "  order=(";
        for (std::size_t i = 0; i < r.dag->witness.size(); ++i) out << (i ? "," : "") << r.dag->witness[i];
        out << ")\n";
    }
    if (r.directed_cycle) out << "cycle       " << *r.directed_cycle << "\n";
    if (r.no_excess) out << "no_excess   " << *r.no_excess << "\n";
    out << "certified   " << (r.certified_optimal ? "yes" : "no") << "  kind=" << certificate_name(r.certificate);
    if (r.optimal_rate) out << "  optimal=" << fraction_string(*r.optimal_rate);
    out << "\n";
    for (const auto& n : r.notes) out << "note        " << n << "\n";
    (void)inst;
    return out.str();
}

namespace {

// CAPM rate after the Step-2 promotions out of every level except the highest one
// that promotes anything.
std::size_t rate_before_top_level_promotions(const Instance& inst) {
    const CapmResult full = run_capm(inst);
    int top = 0;
    for (const TraceEvent& e : full.trace) {
        if (e.kind == TraceKind::promoted) top = std::max(top, e.from.size());
    }
    Trace lower_levels;
    for (const TraceEvent& e : full.trace) {
        if (e.kind == TraceKind::promoted && e.from.size() < top) lower_levels.push_back(e);
    }
    return capm_rate(inst, replay_trace(inst, full.step1_table, lower_levels));
}

class SuiteBuilder {
public:
    void expect(const std::string& fixture, const std::string& quantity, const std::string& expected,
                const std::string& actual) {
        rows_.push_back({fixture, quantity, expected, actual, expected == actual});
    }
    void expect_count(const std::string& fixture, const std::string& quantity, std::size_t expected,
                      std::size_t actual) {
        expect(fixture, quantity, std::to_string(expected), std::to_string(actual));
    }
    std::vector<SuiteRow> rows() && { return std::move(rows_); }

private:
    std::vector<SuiteRow> rows_;
};

Instance load(const std::string& name) { return parse_instance(reference_fixture(name).text); }

}  // namespace

std::vector<SuiteRow> run_reference_suite() {
    SuiteBuilder s;
    {
        const Instance inst = load("example1");
        const CapmResult capm = run_capm(inst);
        s.expect_count("example1", "capm", 5, capm.rate);
        s.expect_count("example1", "capm_after_step2", 6, capm.rate_after_step2);
        s.expect_count("example1", "lower", 5, dsm_plus_dp(inst).value);
        const RateReport report = check_instance(inst, {false, 0});
        s.expect("example1", "certified", "yes", report.certified_optimal ? "yes" : "no");
    }
    s.expect_count("example2", "capm", 5, run_capm(load("example2")).rate);
    s.expect_count("example2_swapped", "capm", 6, run_capm(load("example2_swapped")).rate);
    {
        const Instance inst = load("example3");
        s.expect_count("example3", "capm", 5, run_capm(inst).rate);
        s.expect_count("example3", "capm_before_top_level_promotions", 4, rate_before_top_level_promotions(inst));
    }
    {
        const Instance inst = load("fig4");
        const ScapmResult sc = run_scapm(inst);
        s.expect("fig4", "scapm", "21/2", fraction_string(sc.rate));
        s.expect_count("fig4", "t", 2, sc.t);
    }
    {
        const Instance inst = load("five_cycle");
        const ScapmResult sc = run_scapm(inst);
        s.expect("five_cycle", "scapm", "5/2", fraction_string(sc.rate));
        s.expect_count("five_cycle", "t", 2, sc.t);
        s.expect_count("five_cycle", "exact", 3, exact_scalar_linear(inst).rate);
    }
    {
        const Instance inst = load("directed_cycle4");
        s.expect_count("directed_cycle4", "capm", 3, run_capm(inst).rate);
        s.expect_count("directed_cycle4", "lower", 3, dsm_plus_dp(inst).value);
    }
    return std::move(s).rows();
}

}  // namespace indexcode
