#include <doctest.h>

#include <map>

#include "indexcode/capm.hpp"
#include "indexcode/dsm_bound.hpp"
#include "indexcode/generate.hpp"
#include "support.hpp"

using namespace indexcode;
using test_support::fixture;
using test_support::set_of;

namespace {

// subset -> labels of each component ("b3^b4"), in table order.
std::map<DecoderSet, std::vector<std::string>> contents(const Instance& inst, const MessageTable& table) {
    std::map<DecoderSet, std::vector<std::string>> out;
    for (const Message& msg : table.messages()) {
        for (const Component& c : msg.components) {
            std::string s;
            for (std::size_t k : c.bits) s += (s.empty() ? "" : "^") + inst.label(k);
            out[msg.subset].push_back(s);
        }
    }
    return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Each source bit in exactly one component.
bool conserves(const Instance& inst, const MessageTable& table) {
    std::vector<int> seen(inst.size(), 0);
    for (const Message& msg : table.messages()) {
        for (const Component& c : msg.components) {
            for (std::size_t k : c.bits) ++seen[k];
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
}

}  // namespace

TEST_CASE("step 1 placements") {
    const Instance ex1 = fixture("example1");
    const auto t1 = contents(ex1, step1(ex1).table);
    CHECK(t1.size() == 4);
    CHECK(t1.at(set_of({1, 2})) == std::vector<std::string>{"b1"});
    CHECK(t1.at(set_of({2, 3})) == std::vector<std::string>{"b2"});
    CHECK(t1.at(set_of({1, 2, 3})) == std::vector<std::string>{"b3", "b4"});
    CHECK(t1.at(DecoderSet::full(4)) == std::vector<std::string>{"b5", "b6"});

    const Instance fig = fixture("fig4");
    const auto t4 = contents(fig, step1(fig).table);
    CHECK(t4.at(set_of({1, 4})) == std::vector<std::string>{"S13"});
    CHECK(t4.at(set_of({1, 2})) == std::vector<std::string>{"S3", "S4"});
    CHECK(sorted(t4.at(DecoderSet::full(4))) == sorted({"S1", "S2", "S11", "S12"}));

    const Instance none_held(3, {{"", set_of({1}), {}}, {"", set_of({2, 3}), {}}});
    const MessageTable only = step1(none_held).table;
    REQUIRE(only.messages().size() == 1);
    CHECK(only.messages()[0].subset == DecoderSet::full(3));
}

TEST_CASE("step 1 never fills level-1 messages") {
    for (const auto& inst : test_support::corpus(80, 6, 12)) {
        if (inst.decoders() < 2) continue;
        for (const Message& msg : step1(inst).table.messages()) CHECK(msg.subset.size() >= 2);
    }
}

TEST_CASE("message rate") {
    const Instance ex1 = fixture("example1");
    const MessageTable t1 = step1(ex1).table;
    const Message* u123 = t1.find(set_of({1, 2, 3}));
    REQUIRE(u123 != nullptr);
    CHECK(message_rate(ex1, *u123, 2) == 0);
    CHECK(message_rate(ex1, *u123, 1) == 1);
    CHECK_THROWS(message_rate(ex1, *u123, 4));

    const CapmResult r = run_capm(ex1);
    const Message* top = r.table.find(DecoderSet::full(4));
    REQUIRE(top != nullptr);
    CHECK(message_rate(ex1, *top, 4) == 5);
    CHECK(capm_rate(ex1, MessageTable{}) == 0);
}

TEST_CASE("step 2 on the six-bit fixture promotes everything to the top") {
    const Instance ex1 = fixture("example1");
    const StepResult s2 = step2(ex1, step1(ex1).table);
    REQUIRE(s2.table.messages().size() == 1);
    CHECK(s2.table.messages()[0].components.size() == 6);
    CHECK(capm_rate(ex1, s2.table) == 6);
    CHECK(promotion_count(s2.trace) == 6);
}

TEST_CASE("step 2 on the five-decoder fixture") {
    const Instance ex3 = fixture("example3");
    const StepResult s2 = step2(ex3, step1(ex3).table);
    REQUIRE(s2.table.messages().size() == 1);
    CHECK(s2.table.messages()[0].subset == DecoderSet::full(5));
    CHECK(capm_rate(ex3, s2.table) == 5);
    // Level-3 content moves to U{1,2,3,4} first, then on to the top.
    std::vector<int> from_levels;
    for (const auto& e : s2.trace) from_levels.push_back(e.from.size());
    CHECK(from_levels == std::vector<int>{3, 3, 3, 4, 4, 4});
}

TEST_CASE("step 2 leaves a balanced table alone") {
    const Instance balanced(2, {{"", set_of({1}), set_of({2})}, {"", set_of({2}), set_of({1})}});
    const StepResult s2 = step2(balanced, step1(balanced).table);
    CHECK(s2.trace.empty());
    CHECK(contents(balanced, s2.table) == contents(balanced, step1(balanced).table));
}

TEST_CASE("step 3 merges the compatible excess pair") {
    const Instance ex1 = fixture("example1");
    const CapmResult r = run_capm(ex1);
    CHECK(r.rate == 5);
    const auto t = contents(ex1, r.table);
    CHECK(sorted(t.at(DecoderSet::full(4))) == sorted({"b5", "b6", "b3^b4", "b1", "b2"}));

    const Instance ex2 = fixture("example2");
    const CapmResult r2 = run_capm(ex2);
    CHECK(r2.rate == 5);
    for (const auto& e : r2.trace) CHECK(e.kind != TraceKind::xored);

    const Instance plain(2, {{"", set_of({1}), set_of({2})}, {"", set_of({2}), set_of({1})}});
    const StepResult s3 = step3(plain, step1(plain).table);
    CHECK(s3.trace.empty());
}

TEST_CASE("labeling changes the heuristic rate") {
    CHECK(run_capm(fixture("example2")).rate == 5);
    CHECK(run_capm(fixture("example2_swapped")).rate == 6);
}

TEST_CASE("run_capm on cycles") {
    CHECK(run_capm(directed_cycle(4)).rate == 3);
    CHECK(run_capm(fixture("example3")).rate == 5);
    CHECK(run_capm(fixture("fig4")).rate == 11);
}

TEST_CASE("feasibility checker") {
    const Instance ex1 = fixture("example1");
    CHECK(verify_feasible(ex1, run_capm(ex1).table).ok);

    MessageTable missing = step1(ex1).table;
    Message* top = missing.find(DecoderSet::full(4));
    REQUIRE(top != nullptr);
    top->components.pop_back();  // drop b6
    const Feasibility f = verify_feasible(ex1, missing);
    CHECK_FALSE(f.ok);
    CHECK(f.decoder == 2);
    CHECK(ex1.label(f.bit) == "b6");
}

TEST_CASE("trace rendering is stable") {
    const Instance ex1 = fixture("example1");
    const std::string expected =
        "placed bit=b1 to={1,2}\n"
        "placed bit=b2 to={2,3}\n"
        "placed bit=b3 to={1,2,3}\n"
        "placed bit=b4 to={1,2,3}\n"
        "placed bit=b5 to={1,2,3,4}\n"
        "placed bit=b6 to={1,2,3,4}\n"
        "promoted bit=b1 from={1,2} to={1,2,3} i*=2 j*=1\n"
        "promoted bit=b2 from={2,3} to={1,2,3} i*=2 j*=3\n"
        "promoted bit=b4 from={1,2,3} to={1,2,3,4} i*=2 j*=1\n"
        "promoted bit=b3 from={1,2,3} to={1,2,3,4} i*=2 j*=3\n"
        "promoted bit=b1 from={1,2,3} to={1,2,3,4} i*=2 j*=1\n"
        "promoted bit=b2 from={1,2,3} to={1,2,3,4} i*=2 j*=1\n"
        "xored at={1,2,3,4} keep=b4 absorb=b3\n";
    CHECK(render_trace(ex1, run_capm(ex1).trace) == expected);
    CHECK(render_table(ex1, run_capm(ex1).table) == "U{1,2,3,4} rate=5: b5 b6 b3^b4* b1* b2*\n");
}

TEST_CASE("properties on a random corpus") {
    for (const auto& inst : test_support::corpus(300, 7, 14, 5)) {
        const int m = inst.decoders();
        const StepResult s1 = step1(inst);
        const StepResult s2 = step2(inst, s1.table);
        const StepResult s3 = step3(inst, s2.table);
        const CapmResult r = run_capm(inst);

        CHECK(conserves(inst, s1.table));
        CHECK(conserves(inst, s2.table));
        CHECK(conserves(inst, s3.table));

        for (const auto& e : s2.trace) {
            CHECK(e.from.subset_of(e.to));
            CHECK(e.to.size() == e.from.size() + 1);
        }
        for (const Message& msg : s2.table.messages()) {
            if (msg.subset == DecoderSet::full(m)) continue;
            std::size_t lo = SIZE_MAX, hi = 0;
            for (int d : msg.subset.members()) {
                lo = std::min(lo, message_rate(inst, msg, d));
                hi = std::max(hi, message_rate(inst, msg, d));
            }
            CHECK(lo == hi);
        }
        for (const Message& msg : s3.table.messages()) {
            for (const Component& c : msg.components) {
                CHECK((c.need & c.has).empty());
                CHECK(c.need.subset_of(msg.subset));
            }
        }

        CHECK(capm_rate(inst, s3.table) <= capm_rate(inst, s2.table));
        CHECK(r.rate == capm_rate(inst, s3.table));
        CHECK(r.rate <= inst.size());
        CHECK(r.rate >= dsm_plus_dp(inst).value);
        CHECK(verify_feasible(inst, r.table).ok);

        const MessageTable replayed = replay_trace(inst, r.step1_table, r.trace);
        CHECK(contents(inst, replayed) == contents(inst, r.table));
        CHECK(render_trace(inst, run_capm(inst).trace) == render_trace(inst, r.trace));
    }
}
