#include <doctest.h>

#include "indexcode/capm.hpp"
#include "indexcode/closed_form.hpp"
#include "indexcode/dsm_bound.hpp"
#include "indexcode/generate.hpp"
#include "indexcode/oracle.hpp"
#include "support.hpp"

using namespace indexcode;
using test_support::fixture;
using test_support::set_of;

namespace {

// Decoder n demands W_{n,S} for every pair S not containing n and holds every W_{.,S} with n in S.
Instance coded_caching() {
    std::vector<BitSpec> bits;
    for (int n = 1; n <= 4; ++n) {
        for (int a = 1; a <= 4; ++a) {
            for (int b = a + 1; b <= 4; ++b) {
                if (a == n || b == n) continue;
                bits.push_back({"W" + std::to_string(n) + "_" + std::to_string(a) + std::to_string(b), set_of({n}),
                                set_of({a, b})});
            }
        }
    }
    return Instance(4, bits);
}

}  // namespace

TEST_CASE("staircase") {
    const auto seg = staircase_xor({{1}, {2, 3}, {4, 5, 6}});
    REQUIRE(seg.size() == 3);
    CHECK(seg[0] == std::vector<XorSymbol>{{1, 2, 4}});
    CHECK(seg[1] == std::vector<XorSymbol>{{3, 5}});
    CHECK(seg[2] == std::vector<XorSymbol>{{6}});

    // Equal lengths leave zero-width segments.
    const auto flat = staircase_xor({{1, 2}, {3, 4}});
    CHECK(flat[0] == std::vector<XorSymbol>{{1, 3}, {2, 4}});
    CHECK(flat[1].empty());

    CHECK(staircase_xor({{}, {7}})[1] == std::vector<XorSymbol>{{7}});
    CHECK(staircase_xor({}).empty());
    CHECK_THROWS(staircase_xor({{1, 2}, {3}}));
}

TEST_CASE("demand matrix") {
    const Instance cc = coded_caching();
    const auto rows = demand_matrix(cc);
    REQUIRE(rows.size() == 4);
    for (const DemandRow& row : rows) {
        CHECK(row.owners.size() == 3);
        for (std::size_t i = 0; i < row.owners.size(); ++i) {
            CHECK(row.owners[i] != row.decoder);
            CHECK(row.blocks[i].size() == 1);
            for (std::size_t k : row.blocks[i]) {
                CHECK(cc.bit(k).need == DecoderSet::single(row.owners[i]));
                CHECK_FALSE(cc.bit(k).has.contains(row.decoder));
            }
        }
    }
    // Block sizes are nondecreasing along every row.
    for (const auto& inst : test_support::corpus(60, 5, 10, 21)) {
        for (const DemandRow& row : demand_matrix(inst)) {
            for (std::size_t i = 1; i < row.blocks.size(); ++i) CHECK(row.blocks[i - 1].size() <= row.blocks[i].size());
        }
    }
}

TEST_CASE("gm2 form") {
    // Three decoders, each bit held by the other two: one XOR serves everybody.
    const Instance triangle(3, {{"", set_of({1}), set_of({2, 3})},
                                {"", set_of({2}), set_of({1, 3})},
                                {"", set_of({3}), set_of({1, 2})}});
    CHECK(gm2_rate(triangle).rate == 1);

    const Instance nothing_held(3, {{"", set_of({1}), {}}, {"", set_of({2}), {}}, {"", set_of({3}), {}}});
    CHECK(gm2_rate(nothing_held).rate == 3);

    const Gm2Result cc = gm2_rate(coded_caching());
    CHECK(cc.rate == 4);
    CHECK(cc.per_decoder.size() == 4);
    CHECK(cc.argmax >= 1);

    CHECK_THROWS_AS(gm2_rate(directed_cycle(5)), PreconditionError);
    CHECK_THROWS_AS(gm2_rate(fixture("example1")), PreconditionError);
}

TEST_CASE("gm2 form matches the linear oracle") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const Instance inst = random_gm2(3 + static_cast<int>(seed % 3), 3 + seed % 6, seed);
        const std::size_t rate = gm2_rate(inst).rate;
        CHECK(rate >= dsm_plus_dp(inst).value);
        CHECK(rate <= run_capm(inst).rate);
        CHECK(rate == exact_scalar_linear(inst).rate);
    }
}

TEST_CASE("no excess") {
    const Instance single(1, {{"", set_of({1}), {}}, {"", set_of({1}), {}}});
    CHECK(no_excess_rate(single) == 2);

    const Instance cc = coded_caching();
    CHECK(promotion_count(step2(cc, step1(cc).table).trace) == 0);
    CHECK(no_excess_rate(cc) == 4);
    CHECK(run_capm(cc).rate == 4);

    CHECK_THROWS_AS(no_excess_rate(fixture("example1")), PreconditionError);
}

TEST_CASE("directed cycle") {
    for (int m = 2; m <= 8; ++m) {
        CHECK(directed_cycle_rate(m) == static_cast<std::size_t>(m - 1));
        CHECK(run_capm(directed_cycle(m)).rate == directed_cycle_rate(m));
    }
    CHECK(exact_scalar_linear(directed_cycle(6)).rate == 5);
    CHECK_THROWS(directed_cycle_rate(1));
}

TEST_CASE("dag peeling") {
    const Instance chain(2, {{"", set_of({1}), {}}, {"", set_of({2}), set_of({1})}});
    // Decoder 1 holds bit 2, decoder 2 holds nothing: decoder 2 is peeled first.
    const DagResult r = dag_analysis(chain);
    CHECK(r.rate == 2);
    CHECK(r.witness == std::vector<int>{2, 1});
    CHECK(satisfies_dag_order(chain, r.witness));
    CHECK_FALSE(satisfies_dag_order(chain, {1, 2}));
    CHECK_THROWS_AS(dag_analysis(directed_cycle(3)), PreconditionError);

    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        const Instance dag = random_dag(2 + static_cast<int>(seed % 5), 4 + seed % 6, seed);
        const DagResult d = dag_analysis(dag);
        CHECK(d.rate == dag.size());
        CHECK(d.witness.size() == static_cast<std::size_t>(dag.decoders()));
        CHECK(satisfies_dag_order(dag, d.witness));
        CHECK(chain_value(dag, d.witness).value == dag.size());
        if (dag.size() <= 9) CHECK(exact_scalar_linear(dag).rate == dag.size());
    }
}
