// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "indexcode/generate.hpp"
#include "indexcode/report.hpp"

using namespace indexcode;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Checker {
public:
    void require(bool cond, const std::string& what) {
        if (!cond && ok_) {
            ok_ = false;
            first_failure_ = what;
        }
    }
    Outcome done(const std::string& summary) const { return {ok_, ok_ ? summary : first_failure_}; }

private:
    bool ok_ = true;
    std::string first_failure_;
};

Instance fixture(const std::string& name) { return parse_instance(reference_fixture(name).text); }

std::string str(std::size_t v) { return std::to_string(v); }

// Rate after Step-2 promotions from every level below the highest promoting level.
std::size_t rate_before_top_level(const Instance& inst, const CapmResult& r) {
    int top = 0;
    for (const auto& e : r.trace) {
        if (e.kind == TraceKind::promoted) top = std::max(top, e.from.size());
    }
    Trace kept;
    for (const auto& e : r.trace) {
        if (e.kind == TraceKind::promoted && e.from.size() < top) kept.push_back(e);
    }
    return capm_rate(inst, replay_trace(inst, r.step1_table, kept));
}

Outcome criterion1() {
    Checker c;
    const Instance inst = fixture("example1");
    const CapmResult r = run_capm(inst);
    const RateReport rep = check_instance(inst, {false, 0});
    c.require(r.rate == 5, "capm " + str(r.rate) + " != 5");
    c.require(r.rate_after_step2 == 6, "post-step2 " + str(r.rate_after_step2) + " != 6");
    c.require(dsm_plus_dp(inst).value == 5, "lower != 5");
    c.require(rep.certified_optimal, "not certified");
    return c.done("capm=5 step2=6 lower=5 certified");
}

Outcome criterion2() {
    Checker c;
    const std::size_t a = run_capm(fixture("example2")).rate;
    const std::size_t b = run_capm(swap_decoders(fixture("example2"), 1, 3)).rate;
    c.require(a == 5, "capm " + str(a) + " != 5");
    c.require(b == 6, "swapped capm " + str(b) + " != 6");
    return c.done("capm=5 swapped(1,3)=6");
}

Outcome criterion3() {
    Checker c;
    const Instance inst = fixture("example3");
    const CapmResult r = run_capm(inst);
    const std::size_t before = rate_before_top_level(inst, r);
    c.require(r.rate == 5, "capm " + str(r.rate) + " != 5");
    c.require(before == 4, "rate before final promotions " + str(before) + " != 4");
    bool last_is_top = false;
    for (const auto& e : r.trace) {
        if (e.kind == TraceKind::promoted) last_is_top = e.to == DecoderSet::full(5);
    }
    c.require(last_is_top, "trace does not end with a promotion into the top message");
    return c.done("capm=5, 4 before the final level-4 promotions");
}

Outcome criterion4() {
    Checker c;
    const Instance inst = fixture("fig4");
    const ScapmResult r = run_scapm(inst);
    c.require(fraction_string(r.rate) == "21/2", "rate " + fraction_string(r.rate));
    c.require(r.t == 2, "t=" + str(r.t));
    // Expected final table: halves on S4,S6,S8,S10,S13, everything else whole.
    ThetaTable expected;
    const Rational half(1, 2);
    auto set = [&](std::uint32_t mask, std::size_t bit, Rational v) { expected.set(DecoderSet(mask), bit - 1, v); };
    const std::uint32_t u124 = 0b1011, u134 = 0b1101, all = 0b1111;
    set(u124, 13, half), set(u124, 8, half), set(u124, 4, half);
    set(u134, 13, half), set(u134, 10, half), set(u134, 6, half);
    for (std::size_t k : {1, 2, 11, 12, 3, 7, 5, 9}) set(all, k, 1);
    for (std::size_t k : {6, 4, 8, 10}) set(all, k, half);
    c.require(r.theta == expected, "theta table differs from the reference list");
    c.require(verify_feasible(r.plan.instance, r.plan.table).ok, "expanded plan not decodable");
    return c.done("scapm=21/2 t=2, theta table identical");
}

Outcome criterion5() {
    Checker c;
    const Instance inst = fixture("five_cycle");
    const ScapmResult r = run_scapm(inst);
    const OracleResult o = exact_scalar_linear(inst);
    c.require(fraction_string(r.rate) == "5/2", "rate " + fraction_string(r.rate));
    c.require(r.t == 2, "t=" + str(r.t));
    c.require(o.rate == 3, "exact " + str(o.rate));
    return c.done("scapm=5/2 t=2 exact=3");
}

Outcome criterion6() {
    Checker c;
    for (int m = 3; m <= 10; ++m) {
        const Instance inst = directed_cycle(m);
        const auto want = static_cast<std::size_t>(m - 1);
        c.require(classify(inst).is_directed_cycle, "m=" + std::to_string(m) + " not classified");
        c.require(run_capm(inst).rate == want, "capm m=" + std::to_string(m));
        c.require(dsm_plus_dp(inst).value == want, "lower m=" + std::to_string(m));
        c.require(directed_cycle_rate(m) == want, "closed form m=" + std::to_string(m));
    }
    return c.done("m=3..10: capm = lower = m-1");
}

Outcome criterion7() {
    Checker c;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int m = 2 + static_cast<int>(seed % 7);
        const std::size_t s = static_cast<std::size_t>(m) + seed % (21 - static_cast<std::uint64_t>(m));
        const Instance inst = random_dag(m, s, seed);
        const std::string tag = "seed " + std::to_string(seed);
        c.require(inst.decoders() == m, tag + ": decoder count collapsed");
        c.require(classify(inst).is_dag, tag + ": not a DAG");
        const DagResult d = dag_analysis(inst);
        c.require(satisfies_dag_order(inst, d.witness), tag + ": witness order invalid");
        c.require(chain_value(inst, d.witness).value == inst.size(), tag + ": witness chain != s");
        c.require(dsm_plus_dp(inst).value == inst.size(), tag + ": lower != s");
        c.require(run_capm(inst).rate == inst.size(), tag + ": capm != s");
    }
    return c.done("200 DAGs: lower = capm = s");
}

Outcome criterion8() {
    Checker c;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int m = 4 + static_cast<int>(seed % 3);
        const std::size_t s = static_cast<std::size_t>(m) + (seed * 7) % (25 - static_cast<std::uint64_t>(m));
        const Instance inst = random_gm2(m, s, seed);
        const std::string tag = "seed " + std::to_string(seed);
        c.require(inst.decoders() == m, tag + ": decoder count collapsed");
        c.require(classify(inst).is_gm2_form, tag + ": not in gm2 form");
        const std::size_t closed = gm2_rate(inst).rate;
        const std::size_t capm = run_capm(inst).rate;
        const std::size_t lower = dsm_plus_dp(inst).value;
        c.require(closed == capm && capm == lower,
                  tag + ": closed=" + str(closed) + " capm=" + str(capm) + " lower=" + str(lower));
    }
    return c.done("200 gm2-form instances: closed form = capm = lower");
}

// All 19 bit types for three decoders: has a proper subset, need a nonempty subset of the rest.
std::vector<BitSpec> three_decoder_types() {
    std::vector<BitSpec> types;
    for (std::uint32_t has = 0; has < 7; ++has) {
        const std::uint32_t rest = 7 & ~has;
        for (std::uint32_t need = rest; need != 0; need = (need - 1) & rest) {
            types.push_back({"", DecoderSet(need), DecoderSet(has)});
        }
    }
    return types;
}

Outcome criterion9() {
    Checker c;
    const auto types = three_decoder_types();
    c.require(types.size() == 19, "expected 19 bit types");
    std::size_t checked = 0;
    std::vector<std::size_t> pick;
    // Multisets of types of size 1..5, as nondecreasing index sequences.
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
        if (!pick.empty()) {
            std::vector<BitSpec> bits;
            for (std::size_t t : pick) bits.push_back(types[t]);
            const Instance inst = normalize(Instance(3, bits)).instance;
            const std::size_t capm = run_capm(inst).rate;
            const std::size_t lower = dsm_plus_dp(inst).value;
            if (capm != lower) {
                std::ostringstream msg;
                msg << "capm " << capm << " != lower " << lower << " for\n" << render_instance(inst);
                c.require(false, msg.str());
            }
            ++checked;
        }
        if (pick.size() == 5) return;
        for (std::size_t t = from; t < types.size(); ++t) {
            pick.push_back(t);
            grow(t);
            pick.pop_back();
        }
    };
    grow(0);
    return c.done(str(checked) + " multisets: capm = lower");
}

Outcome criterion10() {
    Checker c;
    std::size_t strict_gaps = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const int m = 2 + static_cast<int>(seed % 4);
        const std::size_t s = 1 + seed % 8;
        const Instance inst = random_instance(m, s, seed);
        const std::string tag = "seed " + std::to_string(seed);
        const std::size_t lower = dsm_plus_dp(inst).value;
        const OracleResult exact = exact_scalar_linear(inst);
        const CapmResult capm = run_capm(inst);
        const ScapmResult sc = run_scapm(inst);
        c.require(lower <= exact.rate, tag + ": lower " + str(lower) + " > exact " + str(exact.rate));
        c.require(exact.rate <= capm.rate, tag + ": exact " + str(exact.rate) + " > capm " + str(capm.rate));
        c.require(decodable(inst, exact.witness), tag + ": oracle witness not decodable");
        c.require(verify_feasible(inst, capm.table).ok, tag + ": CAPM table not decodable");
        c.require(verify_feasible(sc.plan.instance, sc.plan.table).ok, tag + ": S-CAPM plan not decodable");
        if (lower < capm.rate) ++strict_gaps;
    }
    return c.done("500 instances: lower <= exact <= capm, all plans decodable (" + str(strict_gaps) +
                  " with lower < capm)");
}

Outcome criterion11() {
    Checker c;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const int m = 1 + static_cast<int>(seed % 7);
        const std::size_t s = 1 + seed % 14;
        const Instance inst = random_instance(m, s, seed);
        const ChainWitness dp = dsm_plus_dp(inst);
        const ChainWitness brute = dsm_plus_enumerate(inst);
        c.require(dp.value == brute.value, "seed " + std::to_string(seed) + ": dp " + str(dp.value) + " != " +
                                               str(brute.value));
    }
    return c.done("200 instances: dp = enumeration");
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3},  {4, criterion4},   {5, criterion5},  {6, criterion6},
        {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11},
    };
    int failures = 0;
    for (const auto& [id, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2d: %s  %.3fs  %s\n", id, o.ok ? "PASS" : "FAIL", secs, o.detail.c_str());
        if (!o.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
