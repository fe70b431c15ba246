#include "indexcode/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace indexcode {

namespace {

constexpr int kAttempts = 64;

// Portable draws on top of mt19937_64 (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    bool coin() { return (engine_() >> 17) & 1U; }
    DecoderSet random_subset(DecoderSet pool) {
        DecoderSet out;
        for (int d : pool.members()) {
            if (coin()) out.insert(d);
        }
        return out;
    }
    DecoderSet random_nonempty_subset(DecoderSet pool) {
        DecoderSet out;
        while (out.empty()) out = random_subset(pool);
        return out;
    }
    int pick(DecoderSet pool) {
        auto members = pool.members();
        return members[below(members.size())];
    }
    std::vector<int> permutation(int m) {
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 1);
        for (int i = m - 1; i > 0; --i) std::swap(perm[i], perm[below(static_cast<std::uint64_t>(i) + 1)]);
        return perm;
    }

private:
    std::mt19937_64 engine_;
};

void check_params(int m, std::size_t s) {
    if (m < 1 || m > kMaxDecoders) throw std::invalid_argument("decoder count must be in 1..16");
    if (s > kMaxBits) throw std::invalid_argument("bit count exceeds cap");
}

template <typename Draw>
Instance generate_normalized(int m, std::uint64_t seed, Draw draw) {
    Rng rng(seed);
    Instance fallback;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Instance inst = normalize(Instance(m, draw(rng))).instance;
        if (inst.decoders() == m) return inst;
        if (attempt == 0) fallback = inst;
    }
    return fallback;
}

}  // namespace

Instance directed_cycle(int m) {
    if (m < 2 || m > kMaxDecoders) throw std::invalid_argument("directed cycle needs 2..16 decoders");
    std::vector<BitSpec> bits;
    for (int k = 1; k <= m; ++k) {
        int holder = k == 1 ? m : k - 1;
        bits.push_back({"b" + std::to_string(k), DecoderSet::single(k), DecoderSet::single(holder)});
    }
    return Instance(m, std::move(bits));
}

Instance undirected_cycle(int m) {
    if (m < 3 || m > kMaxDecoders) throw std::invalid_argument("undirected cycle needs 3..16 decoders");
    std::vector<BitSpec> bits;
    for (int k = 1; k <= m; ++k) {
        int prev = k == 1 ? m : k - 1;
        int next = k == m ? 1 : k + 1;
        bits.push_back({"b" + std::to_string(k), DecoderSet::single(k), DecoderSet::single(prev) | DecoderSet::single(next)});
    }
    return Instance(m, std::move(bits));
}

Instance random_dag(int m, std::size_t s, std::uint64_t seed) {
    check_params(m, s);
    return generate_normalized(m, seed, [m, s](Rng& rng) {
        // Build along a hidden decoder order: position p may hold a bit only if every
        // demander of that bit sits at an earlier position. Then relabel decoders.
        std::vector<DecoderSet> demanders(s);
        for (auto& d : demanders) {
            // Mostly single demanders, so later positions have bits they are allowed to hold.
            d = rng.below(4) != 0 ? DecoderSet::single(rng.pick(DecoderSet::full(m)))
                                  : rng.random_nonempty_subset(DecoderSet::full(m));
        }
        std::vector<DecoderSet> holders(s);
        for (int pos = 1; pos <= m; ++pos) {
            const DecoderSet earlier(DecoderSet::full(pos - 1));
            for (std::size_t k = 0; k < s; ++k) {
                if (demanders[k].subset_of(earlier) && rng.coin()) holders[k].insert(pos);
            }
        }
        const auto label = rng.permutation(m);
        auto relabel = [&](DecoderSet set) {
            DecoderSet out;
            for (int d : set.members()) out.insert(label[d - 1]);
            return out;
        };
        std::vector<BitSpec> bits;
        for (std::size_t k = 0; k < s; ++k) bits.push_back({"", relabel(demanders[k]), relabel(holders[k])});
        return bits;
    });
}

Instance random_gm2(int m, std::size_t s, std::uint64_t seed) {
    check_params(m, s);
    if (m < 2) throw std::invalid_argument("G_{m-2} generator needs at least two decoders");
    return generate_normalized(m, seed, [m, s](Rng& rng) {
        std::vector<BitSpec> bits;
        const DecoderSet all = DecoderSet::full(m);
        for (std::size_t k = 0; k < s; ++k) {
            DecoderSet missing;
            switch (rng.below(5)) {
                case 0: missing = all; break;
                case 1: missing = DecoderSet::single(rng.pick(all)); break;
                default: {
                    int a = rng.pick(all);
                    int b = rng.pick(DecoderSet::single(a).complement(m));
                    missing = DecoderSet::single(a) | DecoderSet::single(b);
                }
            }
            DecoderSet need = (missing.size() == 2 && rng.below(4) != 0) ? DecoderSet::single(rng.pick(missing))
                                                                          : rng.random_nonempty_subset(missing);
            bits.push_back({"", need, missing.complement(m)});
        }
        return bits;
    });
}

Instance random_instance(int m, std::size_t s, std::uint64_t seed) {
    check_params(m, s);
    return generate_normalized(m, seed, [m, s](Rng& rng) {
        std::vector<BitSpec> bits;
        const DecoderSet all = DecoderSet::full(m);
        for (std::size_t k = 0; k < s; ++k) {
            DecoderSet has;
            do {
                has = rng.random_subset(all);
            } while (has == all);
            DecoderSet missing = has.complement(m);
            DecoderSet need = rng.coin() ? DecoderSet::single(rng.pick(missing)) : rng.random_nonempty_subset(missing);
            bits.push_back({"", need, has});
        }
        return bits;
    });
}

const std::vector<Fixture>& reference_fixtures() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> out;
        out.push_back({"example1", "four decoders, six bits; one XOR after promotion",
                       "decoders 4\n"
                       "bit b1 need 1 has 2\n"
                       "bit b2 need 3 has 2\n"
                       "bit b3 need 3 has 1 2\n"
                       "bit b4 need 1 has 2 3\n"
                       "bit b5 need 4 has\n"
                       "bit b6 need 2 has\n"});
        const std::string example2 =
            "decoders 4\n"
            "bit b1 need 1 has 2\n"
            "bit b2 need 1 has 2\n"
            "bit b3 need 2 has 3\n"
            "bit b4 need 2 has 3\n"
            "bit b5 need 3 has 1\n"
            "bit b6 need 3 has 1 2\n"
            "bit b7 need 4 has\n";
        out.push_back({"example2", "labeling-dependent heuristic rate", example2});
        out.push_back({"example2_swapped", "example2 with decoders 1 and 3 exchanged",
                       render_instance(swap_decoders(parse_instance(example2), 1, 3))});
        out.push_back({"example3", "five decoders; a rate-raising final promotion",
                       "decoders 5\n"
                       "bit b1 need 1 has\n"
                       "bit b2 need 5 has\n"
                       "bit b3 need 2 has 1 4\n"
                       "bit b4 need 3 has 1 2\n"
                       "bit b5 need 4 has 1 3\n"});
        out.push_back({"fig4", "four decoders, thirteen bits; fractional rate 21/2",
                       "decoders 4\n"
                       "bit S1 need 2 3 4 has 1\n"
                       "bit S2 need 2 3 4 has 1\n"
                       "bit S3 need 2 has 1\n"
                       "bit S4 need 2 has 1\n"
                       "bit S5 need 3 has 1\n"
                       "bit S6 need 3 has 1\n"
                       "bit S7 need 4 has 2\n"
                       "bit S8 need 4 has 2\n"
                       "bit S9 need 4 has 3\n"
                       "bit S10 need 4 has 3\n"
                       "bit S11 need 1 2 3 has 4\n"
                       "bit S12 need 1 2 3 has 4\n"
                       "bit S13 need 1 has 4\n"});
        out.push_back({"five_cycle", "undirected 5-cycle; fractional rate 5/2", render_instance(undirected_cycle(5))});
        out.push_back({"directed_cycle4", "directed 4-cycle", render_instance(directed_cycle(4))});
        return out;
    }();
    return fixtures;
}

const Fixture& reference_fixture(const std::string& name) {
    for (const Fixture& f : reference_fixtures()) {
        if (f.name == name) return f;
    }
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace indexcode
