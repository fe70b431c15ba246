#include "indexcode/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace indexcode {

namespace {

// Basis keyed by highest set bit.
class Gf2Basis {
public:
    void insert(std::uint32_t v) {
        while (v != 0) {
            int top = 31 - std::countl_zero(v);
            if (slots_[top] == 0) {
                slots_[top] = v;
                return;
            }
            v ^= slots_[top];
        }
    }
    bool spans(std::uint32_t v) const {
        while (v != 0) {
            int top = 31 - std::countl_zero(v);
            if (slots_[top] == 0) return false;
            v ^= slots_[top];
        }
        return true;
    }

private:
    std::array<std::uint32_t, 32> slots_{};
};

struct DecoderView {
    std::uint32_t held = 0;
    std::uint32_t wanted = 0;
};

std::vector<DecoderView> decoder_views(const Instance& inst) {
    std::vector<DecoderView> views;
    for (int d = 1; d <= inst.decoders(); ++d) {
        DecoderView v;
        for (std::size_t k : bit_indices(inst.side_info(d))) v.held |= std::uint32_t{1} << k;
        for (std::size_t k : bit_indices(inst.demand(d))) v.wanted |= std::uint32_t{1} << k;
        v.wanted &= ~v.held;
        views.push_back(v);
    }
    return views;
}

bool rows_decodable(const std::vector<DecoderView>& views, const std::vector<std::uint32_t>& rows) {
    for (const DecoderView& v : views) {
        if (v.wanted == 0) continue;
        Gf2Basis basis;
        for (std::uint32_t row : rows) basis.insert(row & ~v.held);
        for (std::uint32_t rest = v.wanted; rest != 0; rest &= rest - 1) {
            if (!basis.spans(rest & (~rest + 1))) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<std::string> LinearCode::row_strings() const {
    std::vector<std::string> out;
    for (std::uint32_t row : rows) {
        std::string line(columns, '0');
        for (std::size_t c = 0; c < columns; ++c) {
            if ((row >> c) & 1U) line[c] = '1';
        }
        out.push_back(std::move(line));
    }
    return out;
}

LinearCode make_code(std::size_t columns, const std::vector<std::uint32_t>& rows) {
    if (columns > 32) throw GuardError("GF(2) codes support at most 32 columns");
    const std::uint32_t valid = columns == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << columns) - 1);
    std::vector<std::uint32_t> work;
    for (std::uint32_t row : rows) {
        if (row & ~valid) throw std::invalid_argument("row has entries beyond the code length");
        work.push_back(row);
    }
    LinearCode code;
    code.columns = columns;
    std::size_t next = 0;
    for (std::size_t col = 0; col < columns && next < work.size(); ++col) {
        const std::uint32_t bit = std::uint32_t{1} << col;
        auto pivot = std::find_if(work.begin() + static_cast<std::ptrdiff_t>(next), work.end(),
                                  [bit](std::uint32_t r) { return r & bit; });
        if (pivot == work.end()) continue;
        std::iter_swap(work.begin() + static_cast<std::ptrdiff_t>(next), pivot);
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i != next && (work[i] & bit)) work[i] ^= work[next];
        }
        code.pivots.push_back(col);
        ++next;
    }
    work.resize(next);
    code.rows = std::move(work);
    return code;
}

bool decodable(const Instance& inst, const LinearCode& code) {
    if (code.columns != inst.size()) {
        throw std::invalid_argument("code has " + std::to_string(code.columns) + " columns, instance has " +
                                    std::to_string(inst.size()) + " bits");
    }
    if (inst.size() > 32) throw GuardError("GF(2) codes support at most 32 columns");
    return rows_decodable(decoder_views(inst), code.rows);
}

bool for_each_subspace(std::size_t s, std::size_t r,
                       const std::function<bool(const std::vector<std::uint32_t>&, const std::vector<std::size_t>&)>& visit) {
    if (s > 32) throw GuardError("subspace enumeration supports at most 32 columns");
    if (r > s) return true;
    std::vector<std::size_t> pivots(r);
    for (std::size_t i = 0; i < r; ++i) pivots[i] = i;
    std::vector<std::uint32_t> rows(r);

    while (true) {
        std::uint32_t pivot_mask = 0;
        for (std::size_t p : pivots) pivot_mask |= std::uint32_t{1} << p;
        // (row, column) slots that are free in RREF: non-pivot columns right of the row's pivot.
        std::vector<std::pair<std::size_t, std::size_t>> free_slots;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t c = pivots[i] + 1; c < s; ++c) {
                if (!((pivot_mask >> c) & 1U)) free_slots.emplace_back(i, c);
            }
        }
        const std::uint64_t combos = std::uint64_t{1} << free_slots.size();
        for (std::uint64_t fill = 0; fill < combos; ++fill) {
            for (std::size_t i = 0; i < r; ++i) rows[i] = std::uint32_t{1} << pivots[i];
            for (std::size_t f = 0; f < free_slots.size(); ++f) {
                if ((fill >> f) & 1U) rows[free_slots[f].first] |= std::uint32_t{1} << free_slots[f].second;
            }
            if (!visit(rows, pivots)) return false;
        }

        // Next pivot combination in lexicographic order.
        std::size_t i = r;
        while (i > 0 && pivots[i - 1] == s - r + (i - 1)) --i;
        if (i == 0) break;
        ++pivots[i - 1];
        for (std::size_t j = i; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return true;
}

OracleResult exact_scalar_linear(const Instance& inst, std::size_t max_bits) {
    const std::size_t s = inst.size();
    if (s > max_bits || s > kMaxOracleBits) {
        throw GuardError("exact search limited to " + std::to_string(std::min(max_bits, kMaxOracleBits)) +
                         " bits, instance has " + std::to_string(s));
    }
    const auto views = decoder_views(inst);
    OracleResult result;
    for (std::size_t r = 0; r <= s; ++r) {
        bool found = false;
        for_each_subspace(s, r, [&](const std::vector<std::uint32_t>& rows, const std::vector<std::size_t>& pivots) {
            ++result.visited;
            if (!rows_decodable(views, rows)) return true;
            result.rate = r;
            result.witness = LinearCode{s, rows, pivots};
            found = true;
            return false;
        });
        if (found) return result;
    }
    throw std::logic_error("identity code must be decodable");
}

}  // namespace indexcode
