#pragma once

#include <vector>

#include "indexcode/instance.hpp"

namespace indexcode {

/// A decoder ordering together with its chained conditional-entropy terms.
struct ChainWitness {
    std::vector<int> permutation;
    std::vector<std::size_t> terms;
    std::size_t value = 0;
};

/// Evaluates the chain for one ordering: term i counts the demands of decoder perm[i]
/// not covered by its own side information or by the demands/side information of
/// every earlier decoder in the ordering.
ChainWitness chain_value(const Instance& inst, const std::vector<int>& perm);

/// Maximum chain over all orderings via dynamic programming on predecessor sets.
/// The witness is the lexicographically smallest optimal ordering.
ChainWitness dsm_plus_dp(const Instance& inst);

inline constexpr int kMaxEnumerateDecoders = 8;

/// Brute force over all m! orderings; used to cross-check dsm_plus_dp.
ChainWitness dsm_plus_enumerate(const Instance& inst);

}  // namespace indexcode
