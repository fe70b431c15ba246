#pragma once

#include <vector>

#include "indexcode/dsm_bound.hpp"
#include "indexcode/instance.hpp"

namespace indexcode {

/// One transmitted symbol: XOR of the listed source symbols (ascending ids).
using XorSymbol = std::vector<std::size_t>;

/// Staircase XOR of vectors sorted by nondecreasing length. Segment p covers positions
/// l_{p-1}+1 .. l_p and XORs those positions across vectors p..n. Zero-width segments
/// are returned empty.
std::vector<std::vector<XorSymbol>> staircase_xor(const std::vector<std::vector<std::size_t>>& vectors);

/// Row alpha: the blocks f_{beta,{alpha,beta}} for every beta != alpha (bits demanded only
/// by beta and missing only at alpha and beta), sorted by size then by beta.
struct DemandRow {
    int decoder = 0;
    std::vector<int> owners;                        // beta for each block
    std::vector<std::vector<std::size_t>> blocks;   // bit indices
};

std::vector<DemandRow> demand_matrix(const Instance& inst);

struct Gm2Result {
    std::size_t rate = 0;
    int argmax = 0;
    std::vector<std::size_t> per_decoder;  // R_1..R_m
};

/// Optimal rate when every bit is held by none, all, all but one or all but two decoders.
Gm2Result gm2_rate(const Instance& inst);

/// Optimal rate when Step 2 of CAPM promotes nothing: best chain over the m orderings
/// that move one decoder to the front.
std::size_t no_excess_rate(const Instance& inst);

std::size_t directed_cycle_rate(int m);

struct DagResult {
    std::size_t rate = 0;
    std::vector<int> witness;
};

/// Peels decoders whose side information is already covered by earlier demands.
DagResult dag_analysis(const Instance& inst);

/// Checks Y_{w(i)} ⊆ f_{w(1)} ∪ ... ∪ f_{w(i-1)} for every i.
bool satisfies_dag_order(const Instance& inst, const std::vector<int>& witness);

}  // namespace indexcode
