#include "indexcode/closed_form.hpp"

#include <algorithm>
#include <numeric>

#include "indexcode/capm.hpp"

namespace indexcode {

namespace {

XorSymbol xor_symbols(const XorSymbol& a, const XorSymbol& b) {
    XorSymbol out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Bits demanded only by `owner` and missing exactly at {owner, other}.
BitSet private_block(const Instance& inst, int owner, int other) {
    const int m = inst.decoders();
    const DecoderSet holders = (DecoderSet::single(owner) | DecoderSet::single(other)).complement(m);
    BitSet out = inst.empty_bits();
    for (std::size_t k = 0; k < inst.size(); ++k) {
        const BitSpec& b = inst.bit(k);
        if (b.need == DecoderSet::single(owner) && b.has == holders) out.set(k);
    }
    return out;
}

}  // namespace

std::vector<std::vector<XorSymbol>> staircase_xor(const std::vector<std::vector<std::size_t>>& vectors) {
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i].size() < vectors[i - 1].size()) throw std::invalid_argument("vectors must be sorted by length");
    }
    std::vector<std::vector<XorSymbol>> segments(vectors.size());
    std::size_t start = 0;
    for (std::size_t p = 0; p < vectors.size(); ++p) {
        const std::size_t end = vectors[p].size();
        for (std::size_t pos = start; pos < end; ++pos) {
            XorSymbol sym;
            for (std::size_t v = p; v < vectors.size(); ++v) sym = xor_symbols(sym, XorSymbol{vectors[v][pos]});
            segments[p].push_back(std::move(sym));
        }
        start = end;
    }
    return segments;
}

std::vector<DemandRow> demand_matrix(const Instance& inst) {
    const int m = inst.decoders();
    std::vector<DemandRow> rows;
    for (int alpha = 1; alpha <= m; ++alpha) {
        std::vector<std::pair<int, std::vector<std::size_t>>> entries;
        for (int beta = 1; beta <= m; ++beta) {
            if (beta != alpha) entries.emplace_back(beta, bit_indices(private_block(inst, beta, alpha)));
        }
        std::stable_sort(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.second.size() < b.second.size(); });
        DemandRow row{alpha, {}, {}};
        for (auto& [beta, block] : entries) {
            row.owners.push_back(beta);
            row.blocks.push_back(std::move(block));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Gm2Result gm2_rate(const Instance& inst) {
    if (!classify(inst).is_gm2_form) {
        throw PreconditionError("instance has a bit held by fewer than m-2 (and more than zero) decoders");
    }
    const int m = inst.decoders();
    // reduced[j] = f_j minus every block demanded only by j and missing only at j and one other decoder.
    std::vector<BitSet> reduced;
    for (int j = 1; j <= m; ++j) {
        BitSet f = inst.demand(j);
        for (int beta = 1; beta <= m; ++beta) {
            if (beta != j) f -= private_block(inst, j, beta);
        }
        reduced.push_back(std::move(f));
    }

    Gm2Result result;
    for (int i = 1; i <= m; ++i) {
        BitSet pool = inst.demand(i);
        for (int j = 1; j <= m; ++j) {
            if (j != i) pool |= reduced[j - 1];
        }
        std::size_t largest_block = 0;
        for (int j = 1; j <= m; ++j) {
            if (j != i) largest_block = std::max(largest_block, private_block(inst, j, i).count());
        }
        std::size_t r = (pool - inst.side_info(i)).count() + largest_block;
        result.per_decoder.push_back(r);
        if (result.argmax == 0 || r > result.rate) {
            result.rate = r;
            result.argmax = i;
        }
    }
    return result;
}

std::size_t no_excess_rate(const Instance& inst) {
    StepResult placed = step1(inst);
    StepResult balanced = step2(inst, placed.table);
    if (promotion_count(balanced.trace) != 0) {
        throw PreconditionError("Step 2 promotes " + std::to_string(promotion_count(balanced.trace)) + " bit(s)");
    }
    const int m = inst.decoders();
    std::size_t best = 0;
    for (int front = 1; front <= m; ++front) {
        std::vector<int> perm{front};
        for (int d = 1; d <= m; ++d) {
            if (d != front) perm.push_back(d);
        }
        best = std::max(best, chain_value(inst, perm).value);
    }
    return best;
}

std::size_t directed_cycle_rate(int m) {
    if (m < 2) throw std::invalid_argument("a directed cycle needs at least two decoders");
    return static_cast<std::size_t>(m - 1);
}

DagResult dag_analysis(const Instance& inst) {
    if (!classify(inst).is_dag) throw PreconditionError("instance graph has a directed cycle");
    const int m = inst.decoders();
    DagResult result;
    std::vector<bool> peeled(m + 1, false);
    BitSet delivered = inst.empty_bits();
    for (int step = 0; step < m; ++step) {
        int pick = 0;
        for (int d = 1; d <= m && pick == 0; ++d) {
            if (!peeled[d] && inst.side_info(d).is_subset_of(delivered)) pick = d;
        }
        if (pick == 0) throw std::logic_error("acyclic instance without a peelable decoder");
        peeled[pick] = true;
        delivered |= inst.demand(pick);
        result.witness.push_back(pick);
    }
    result.rate = inst.size();
    return result;
}

bool satisfies_dag_order(const Instance& inst, const std::vector<int>& witness) {
    BitSet delivered = inst.empty_bits();
    for (int d : witness) {
        if (!inst.side_info(d).is_subset_of(delivered)) return false;
        delivered |= inst.demand(d);
    }
    return true;
}

}  // namespace indexcode
