#include "indexcode/dsm_bound.hpp"

#include <algorithm>
#include <numeric>

namespace indexcode {

ChainWitness chain_value(const Instance& inst, const std::vector<int>& perm) {
    const int m = inst.decoders();
    if (perm.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("ordering is not a permutation of the decoders");
    std::vector<bool> seen(m + 1, false);
    for (int d : perm) {
        if (d < 1 || d > m || seen[d]) throw std::invalid_argument("ordering is not a permutation of the decoders");
        seen[d] = true;
    }

    ChainWitness w;
    w.permutation = perm;
    BitSet covered = inst.empty_bits();
    for (int d : perm) {
        BitSet fresh = inst.demand(d) - inst.side_info(d) - covered;
        w.terms.push_back(fresh.count());
        w.value += w.terms.back();
        covered |= inst.side_info(d);
        covered |= inst.demand(d);
    }
    return w;
}

ChainWitness dsm_plus_dp(const Instance& inst) {
    const int m = inst.decoders();
    if (m > kMaxDecoders) throw GuardError("DSM+ dynamic program supports at most 16 decoders");
    const std::uint32_t full = DecoderSet::full(m).mask();
    const std::size_t states = std::size_t{1} << m;

    // covered[T] = union over j in T of (Y_j ∪ f_j).
    std::vector<BitSet> covered(states, inst.empty_bits());
    for (std::uint32_t t = 1; t < states; ++t) {
        int low = std::countr_zero(t);
        covered[t] = covered[t & (t - 1)];
        covered[t] |= inst.side_info(low + 1);
        covered[t] |= inst.demand(low + 1);
    }
    // own[d] = f_d \ Y_d
    std::vector<BitSet> own;
    for (int d = 1; d <= m; ++d) own.push_back(inst.demand(d) - inst.side_info(d));

    auto term = [&](std::uint32_t prefix, int d) { return (own[d - 1] - covered[prefix]).count(); };

    // best[T] = largest achievable sum of the remaining terms once the prefix set is T.
    std::vector<std::size_t> best(states, 0);
    for (std::uint32_t t = full; t-- > 0;) {
        std::size_t value = 0;
        for (int d = 1; d <= m; ++d) {
            std::uint32_t bit = std::uint32_t{1} << (d - 1);
            if (t & bit) continue;
            value = std::max(value, term(t, d) + best[t | bit]);
        }
        best[t] = value;
    }

    ChainWitness w;
    w.value = best[0];
    std::uint32_t prefix = 0;
    while (prefix != full) {
        for (int d = 1; d <= m; ++d) {
            std::uint32_t bit = std::uint32_t{1} << (d - 1);
            if (prefix & bit) continue;
            std::size_t gain = term(prefix, d);
            if (gain + best[prefix | bit] == best[prefix]) {
                w.permutation.push_back(d);
                w.terms.push_back(gain);
                prefix |= bit;
                break;
            }
        }
    }
    return w;
}

ChainWitness dsm_plus_enumerate(const Instance& inst) {
    const int m = inst.decoders();
    if (m > kMaxEnumerateDecoders) {
        throw GuardError("permutation enumeration supports at most " + std::to_string(kMaxEnumerateDecoders) +
                         " decoders");
    }
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    ChainWitness best = chain_value(inst, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        ChainWitness w = chain_value(inst, perm);
        if (w.value > best.value) best = std::move(w);
    }
    return best;
}

}  // namespace indexcode
