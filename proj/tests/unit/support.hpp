#pragma once

#include <string>
#include <vector>

#include "indexcode/generate.hpp"
#include "indexcode/instance.hpp"

namespace test_support {

inline indexcode::Instance fixture(const std::string& name) {
    return indexcode::parse_instance(indexcode::reference_fixture(name).text);
}

inline indexcode::BitSet bits_of(const indexcode::Instance& inst, const std::vector<std::string>& labels) {
    indexcode::BitSet out = inst.empty_bits();
    for (const auto& l : labels) {
        for (std::size_t k = 0; k < inst.size(); ++k) {
            if (inst.label(k) == l) out.set(k);
        }
    }
    return out;
}

inline indexcode::DecoderSet set_of(std::initializer_list<int> ds) {
    indexcode::DecoderSet out;
    for (int d : ds) out.insert(d);
    return out;
}

// Small random corpus shared by the property tests.
inline std::vector<indexcode::Instance> corpus(std::size_t count, int max_m, std::size_t max_s, std::uint64_t salt = 0) {
    std::vector<indexcode::Instance> out;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        const int m = 1 + static_cast<int>((seed + salt) % static_cast<std::uint64_t>(max_m));
        const std::size_t s = 1 + (seed * 5 + salt) % max_s;
        out.push_back(indexcode::random_instance(m, s, seed * 1000 + salt));
    }
    return out;
}

}  // namespace test_support
