#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "indexcode/instance.hpp"

namespace indexcode {

inline constexpr std::size_t kDefaultOracleBits = 9;
inline constexpr std::size_t kMaxOracleBits = 14;

/// An r x s GF(2) matrix in reduced row-echelon form. Column j of a row is bit j of
/// its mask; pivots are ascending.
struct LinearCode {
    std::size_t columns = 0;
    std::vector<std::uint32_t> rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return rows.size(); }
    /// Rows as strings of '0'/'1', column 1 first.
    std::vector<std::string> row_strings() const;
};

/// Builds a code from arbitrary rows by Gauss-Jordan elimination (rank may drop).
LinearCode make_code(std::size_t columns, const std::vector<std::uint32_t>& rows);

/// Every decoder recovers each demanded bit from the code's row space plus its side information.
bool decodable(const Instance& inst, const LinearCode& code);

/// Visits each r-dimensional subspace of GF(2)^s once, as its canonical RREF basis.
/// The visitor returns false to stop early; the function returns false if stopped.
bool for_each_subspace(std::size_t s, std::size_t r,
                       const std::function<bool(const std::vector<std::uint32_t>& rows,
                                                const std::vector<std::size_t>& pivots)>& visit);

struct OracleResult {
    std::size_t rate = 0;      // least dimension of a decodable subspace
    LinearCode witness;
    std::uint64_t visited = 0;
};

/// Minimum length of a zero-error scalar linear code over GF(2), by enumeration in
/// increasing dimension. Throws GuardError when s exceeds `max_bits`.
OracleResult exact_scalar_linear(const Instance& inst, std::size_t max_bits = kDefaultOracleBits);

}  // namespace indexcode
