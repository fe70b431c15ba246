#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace indexcode {

inline constexpr int kMaxDecoders = 16;
inline constexpr std::size_t kMaxBits = 4096;

/// Set of source-bit indices (0-based internally, printed 1-based via labels).
using BitSet = boost::dynamic_bitset<>;

/// Set of decoders {1..m} packed into a bitmask; decoder i occupies bit i-1.
class DecoderSet {
public:
    constexpr DecoderSet() = default;
    constexpr explicit DecoderSet(std::uint32_t mask) : mask_(mask) {}

    static constexpr DecoderSet full(int m) {
        return DecoderSet(m >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1));
    }
    static constexpr DecoderSet single(int decoder) {
        return DecoderSet(std::uint32_t{1} << (decoder - 1));
    }

    constexpr std::uint32_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool contains(int decoder) const { return (mask_ >> (decoder - 1)) & 1U; }
    constexpr bool subset_of(DecoderSet other) const { return (mask_ & ~other.mask_) == 0; }

    constexpr void insert(int decoder) { mask_ |= std::uint32_t{1} << (decoder - 1); }
    constexpr void erase(int decoder) { mask_ &= ~(std::uint32_t{1} << (decoder - 1)); }

    constexpr DecoderSet operator|(DecoderSet o) const { return DecoderSet(mask_ | o.mask_); }
    constexpr DecoderSet operator&(DecoderSet o) const { return DecoderSet(mask_ & o.mask_); }
    /// Complement relative to {1..m}.
    constexpr DecoderSet complement(int m) const { return DecoderSet(full(m).mask_ & ~mask_); }

    /// Members in ascending order, 1-based.
    std::vector<int> members() const {
        std::vector<int> out;
        for (std::uint32_t rest = mask_; rest != 0; rest &= rest - 1) {
            out.push_back(std::countr_zero(rest) + 1);
        }
        return out;
    }

    /// Smallest decoder not in the set, or 0 if every decoder of {1..m} is present.
    constexpr int first_missing(int m) const {
        std::uint32_t missing = complement(m).mask_;
        return missing == 0 ? 0 : std::countr_zero(missing) + 1;
    }

    constexpr bool operator==(const DecoderSet&) const = default;

    /// Message order: level (cardinality) first, then bitmask value.
    constexpr std::strong_ordering operator<=>(const DecoderSet& o) const {
        if (auto c = size() <=> o.size(); c != 0) return c;
        return mask_ <=> o.mask_;
    }

    /// Renders as "{1,2,3}".
    std::string str() const {
        std::string out = "{";
        bool first = true;
        for (int d : members()) {
            if (!first) out += ',';
            out += std::to_string(d);
            first = false;
        }
        return out + "}";
    }

private:
    std::uint32_t mask_ = 0;
};

inline std::vector<std::size_t> bit_indices(const BitSet& bits) {
    std::vector<std::size_t> out;
    for (auto k = bits.find_first(); k != BitSet::npos; k = bits.find_next(k)) out.push_back(k);
    return out;
}

class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public InstanceError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : InstanceError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A size cap (decoders, bits, enumeration guard) was exceeded.
class GuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A closed-form evaluator was called on an instance outside its class.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace indexcode
