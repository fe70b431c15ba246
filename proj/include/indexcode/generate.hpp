#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "indexcode/instance.hpp"

namespace indexcode {

/// Decoder k demands bit k and holds bit k+1; decoder m holds bit 1.
Instance directed_cycle(int m);
/// Decoder k demands bit k and holds the bits of both cycle neighbours.
Instance undirected_cycle(int m);

/// The generators below return normalized instances. They retry internally so the
/// decoder count survives normalization when possible.
Instance random_dag(int m, std::size_t s, std::uint64_t seed);
Instance random_gm2(int m, std::size_t s, std::uint64_t seed);
Instance random_instance(int m, std::size_t s, std::uint64_t seed);

struct Fixture {
    std::string name;
    std::string description;
    std::string text;  // instance file contents
};

/// The worked examples behind the reference suite.
const std::vector<Fixture>& reference_fixtures();
const Fixture& reference_fixture(const std::string& name);

}  // namespace indexcode
