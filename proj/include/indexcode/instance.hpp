#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "indexcode/types.hpp"

namespace indexcode {

/// One source bit: which decoders hold it and which demand it.
struct BitSpec {
    std::string label;
    DecoderSet need;
    DecoderSet has;

    bool operator==(const BitSpec&) const = default;
};

/// A groupcast index-coding instance: m decoders and an ordered list of source bits.
///
/// List order is the canonical bit order. The object is immutable once built; side
/// information and demand sets are precomputed so every query is a const read.
class Instance {
public:
    Instance() = default;

    /// Validates decoder ranges, label uniqueness, has/need disjointness and size caps.
    /// Empty labels are replaced by "b<k>" (1-based).
    Instance(int decoders, std::vector<BitSpec> bits);

    int decoders() const { return decoders_; }
    std::size_t size() const { return bits_.size(); }
    const std::vector<BitSpec>& bits() const { return bits_; }
    const BitSpec& bit(std::size_t k) const { return bits_.at(k); }
    const std::string& label(std::size_t k) const { return bits_.at(k).label; }

    /// Y_i: bits held by decoder i (1-based).
    const BitSet& side_info(int decoder) const;
    /// f_i: bits demanded by decoder i (1-based).
    const BitSet& demand(int decoder) const;

    BitSet empty_bits() const { return BitSet(bits_.size()); }
    BitSet all_bits() const { return ~BitSet(bits_.size()); }

    bool operator==(const Instance& o) const { return decoders_ == o.decoders_ && bits_ == o.bits_; }

private:
    void check_decoder(int decoder) const;

    int decoders_ = 0;
    std::vector<BitSpec> bits_;
    std::vector<BitSet> side_info_;
    std::vector<BitSet> demand_;
};

struct Classification {
    bool is_dag = false;
    bool is_directed_cycle = false;
    bool is_gm2_form = false;
    bool is_unicast = false;
};

struct Normalized {
    Instance instance;
    std::vector<std::string> warnings;
};

struct NormalizeOptions {
    bool merge_decoders = true;
};

Instance parse_instance(std::string_view text);
/// Inverse of parse_instance: renders the line-oriented instance format.
std::string render_instance(const Instance& inst);

/// Purges undemanded bits, merges decoders with identical side information and
/// compacts decoder indices (relative order preserved).
Normalized normalize(const Instance& inst, NormalizeOptions options = {});

/// S_J grouping: key J = [m] \ has_k, value = bits with that absence pattern.
std::map<DecoderSet, BitSet> group_by_absence(const Instance& inst);

Classification classify(const Instance& inst);

/// |bits \ Y_i|, the conditional entropy of i.i.d. uniform bits given Y_i.
std::size_t cond_count(const Instance& inst, const BitSet& bits, int decoder);

/// Step-1 message for a bit: U_{need ∪ has}, or U_[m] when nobody holds it.
DecoderSet initial_subset(const Instance& inst, std::size_t k);

/// Same instance with two decoder labels exchanged.
Instance swap_decoders(const Instance& inst, int a, int b);

}  // namespace indexcode
