#include "indexcode/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace indexcode {

namespace {

bool valid_label(std::string_view s) {
    if (s.empty() || s == "need" || s == "has" || s == "bit" || s == "decoders") return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '.' || c == '-';
    });
}

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != '#' && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Instance::Instance(int decoders, std::vector<BitSpec> bits) : decoders_(decoders), bits_(std::move(bits)) {
    if (decoders_ < 1) throw InstanceError("decoder count must be at least 1");
    if (decoders_ > kMaxDecoders) {
        throw GuardError("decoder count " + std::to_string(decoders_) + " exceeds cap " +
                         std::to_string(kMaxDecoders));
    }
    if (bits_.size() > kMaxBits) {
        throw GuardError("bit count " + std::to_string(bits_.size()) + " exceeds cap " + std::to_string(kMaxBits));
    }
    const DecoderSet all = DecoderSet::full(decoders_);
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        BitSpec& b = bits_[k];
        if (b.label.empty()) b.label = "b" + std::to_string(k + 1);
        if (!valid_label(b.label)) throw InstanceError("invalid bit label '" + b.label + "'");
        if (!seen.insert(b.label).second) throw InstanceError("duplicate bit label '" + b.label + "'");
        if (!b.need.subset_of(all) || !b.has.subset_of(all)) {
            throw InstanceError("bit '" + b.label + "' references a decoder outside 1.." + std::to_string(decoders_));
        }
        if (!(b.need & b.has).empty()) {
            throw InstanceError("bit '" + b.label + "' is both demanded and held by decoders " +
                                (b.need & b.has).str());
        }
    }
    side_info_.assign(decoders_, BitSet(bits_.size()));
    demand_.assign(decoders_, BitSet(bits_.size()));
    for (std::size_t k = 0; k < bits_.size(); ++k) {
        for (int d : bits_[k].has.members()) side_info_[d - 1].set(k);
        for (int d : bits_[k].need.members()) demand_[d - 1].set(k);
    }
}

void Instance::check_decoder(int decoder) const {
    if (decoder < 1 || decoder > decoders_) {
        throw std::out_of_range("decoder " + std::to_string(decoder) + " outside 1.." + std::to_string(decoders_));
    }
}

const BitSet& Instance::side_info(int decoder) const {
    check_decoder(decoder);
    return side_info_[decoder - 1];
}

const BitSet& Instance::demand(int decoder) const {
    check_decoder(decoder);
    return demand_[decoder - 1];
}

Instance parse_instance(std::string_view text) {
    int m = 0;
    std::vector<BitSpec> bits;
    std::unordered_set<std::string> labels;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = end + 1;
        ++line_no;

        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const Token& head = tokens.front();

        if (m == 0) {
            if (head.text != "decoders") throw ParseError(line_no, head.column, "expected 'decoders <m>'");
            if (tokens.size() != 2) throw ParseError(line_no, head.column, "expected exactly one decoder count");
            if (!parse_int(tokens[1].text, m) || m < 1) {
                throw ParseError(line_no, tokens[1].column, "decoder count must be a positive integer");
            }
            if (m > kMaxDecoders) {
                throw ParseError(line_no, tokens[1].column,
                                 "decoder count exceeds cap " + std::to_string(kMaxDecoders));
            }
            continue;
        }

        if (head.text == "decoders") throw ParseError(line_no, head.column, "duplicate 'decoders' line");
        if (head.text != "bit") throw ParseError(line_no, head.column, "expected 'bit'");
        if (tokens.size() < 2) throw ParseError(line_no, head.column + 3, "missing bit label");
        const Token& label = tokens[1];
        if (!valid_label(label.text)) {
            throw ParseError(line_no, label.column, "invalid bit label '" + std::string(label.text) + "'");
        }
        if (!labels.insert(std::string(label.text)).second) {
            throw ParseError(line_no, label.column, "duplicate bit label '" + std::string(label.text) + "'");
        }
        if (tokens.size() < 3 || tokens[2].text != "need") {
            std::size_t col = tokens.size() < 3 ? label.column + label.text.size() : tokens[2].column;
            throw ParseError(line_no, col, "expected 'need'");
        }

        BitSpec spec{std::string(label.text), {}, {}};
        DecoderSet* target = &spec.need;
        bool saw_has = false;
        for (std::size_t t = 3; t < tokens.size(); ++t) {
            const Token& tok = tokens[t];
            if (tok.text == "has") {
                if (saw_has) throw ParseError(line_no, tok.column, "duplicate 'has'");
                saw_has = true;
                target = &spec.has;
                continue;
            }
            int d = 0;
            if (!parse_int(tok.text, d)) {
                throw ParseError(line_no, tok.column, "expected decoder index, got '" + std::string(tok.text) + "'");
            }
            if (d < 1 || d > m) {
                throw ParseError(line_no, tok.column,
                                 "decoder index " + std::to_string(d) + " outside 1.." + std::to_string(m));
            }
            target->insert(d);
            if (saw_has && spec.need.contains(d)) {
                throw ParseError(line_no, tok.column,
                                 "decoder " + std::to_string(d) + " both demands and holds bit '" + spec.label + "'");
            }
        }
        if (!saw_has) {
            throw ParseError(line_no, line.size() + 1, "expected 'has' (the keyword is required even when empty)");
        }
        if (bits.size() == kMaxBits) {
            throw ParseError(line_no, head.column, "bit count exceeds cap " + std::to_string(kMaxBits));
        }
        bits.push_back(std::move(spec));
    }
    if (m == 0) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'decoders <m>' line");
    return Instance(m, std::move(bits));
}

std::string render_instance(const Instance& inst) {
    std::ostringstream out;
    out << "decoders " << inst.decoders() << '\n';
    for (const BitSpec& b : inst.bits()) {
        out << "bit " << b.label << " need";
        for (int d : b.need.members()) out << ' ' << d;
        out << " has";
        for (int d : b.has.members()) out << ' ' << d;
        out << '\n';
    }
    return out.str();
}

Normalized normalize(const Instance& inst, NormalizeOptions options) {
    Normalized result;
    const int m = inst.decoders();

    std::vector<BitSpec> kept;
    for (const BitSpec& b : inst.bits()) {
        if (b.need.empty()) {
            result.warnings.push_back("purged undemanded bit " + b.label);
        } else {
            kept.push_back(b);
        }
    }

    // rep[d] = representative decoder (1-based) that d merges into.
    std::vector<int> rep(m + 1);
    for (int d = 1; d <= m; ++d) rep[d] = d;
    if (options.merge_decoders) {
        std::vector<BitSet> side(m + 1, BitSet(kept.size()));
        for (std::size_t k = 0; k < kept.size(); ++k) {
            for (int d : kept[k].has.members()) side[d].set(k);
        }
        for (int d = 2; d <= m; ++d) {
            for (int e = 1; e < d; ++e) {
                if (rep[e] == e && side[e] == side[d]) {
                    rep[d] = e;
                    result.warnings.push_back("merged decoder " + std::to_string(d) + " into decoder " +
                                              std::to_string(e) + " (identical side information)");
                    break;
                }
            }
        }
    }

    std::vector<int> new_index(m + 1, 0);
    int next = 0;
    for (int d = 1; d <= m; ++d) {
        if (rep[d] == d) new_index[d] = ++next;
    }
    auto remap = [&](DecoderSet set) {
        DecoderSet out;
        for (int d : set.members()) out.insert(new_index[rep[d]]);
        return out;
    };
    for (BitSpec& b : kept) {
        b.need = remap(b.need);
        b.has = remap(b.has);
    }
    result.instance = Instance(next, std::move(kept));
    return result;
}

std::map<DecoderSet, BitSet> group_by_absence(const Instance& inst) {
    std::map<DecoderSet, BitSet> groups;
    const int m = inst.decoders();
    for (std::size_t k = 0; k < inst.size(); ++k) {
        auto [it, inserted] = groups.try_emplace(inst.bit(k).has.complement(m), inst.empty_bits());
        it->second.set(k);
    }
    return groups;
}

namespace {

bool bipartite_is_acyclic(const Instance& inst) {
    // Nodes: decoders 0..m-1, bits m..m+s-1. Edge decoder->bit when held, bit->decoder when demanded.
    const int m = inst.decoders();
    const std::size_t s = inst.size();
    std::vector<std::vector<std::size_t>> out(m + s);
    std::vector<std::size_t> indegree(m + s, 0);
    for (std::size_t k = 0; k < s; ++k) {
        for (int d : inst.bit(k).has.members()) {
            out[d - 1].push_back(m + k);
            ++indegree[m + k];
        }
        for (int d : inst.bit(k).need.members()) {
            out[m + k].push_back(d - 1);
            ++indegree[d - 1];
        }
    }
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < out.size(); ++v) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop_front();
        ++visited;
        for (std::size_t w : out[v]) {
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    return visited == out.size();
}

}  // namespace

Classification classify(const Instance& inst) {
    Classification c;
    const int m = inst.decoders();
    const std::size_t s = inst.size();

    c.is_dag = bipartite_is_acyclic(inst);

    c.is_unicast = std::all_of(inst.bits().begin(), inst.bits().end(), [](const BitSpec& b) { return b.need.size() == 1; });
    for (int d = 1; d <= m && c.is_unicast; ++d) {
        if (inst.demand(d).count() != 1) c.is_unicast = false;
    }

    c.is_gm2_form = std::all_of(inst.bits().begin(), inst.bits().end(), [m](const BitSpec& b) {
        int h = b.has.size();
        return h == 0 || h == m || h == m - 1 || (m >= 2 && h == m - 2);
    });

    if (c.is_unicast && m >= 2 && s == static_cast<std::size_t>(m)) {
        bool ok = true;
        std::vector<int> next(m + 1, 0);
        for (int d = 1; d <= m && ok; ++d) {
            const BitSet& held = inst.side_info(d);
            if (held.count() != 1) {
                ok = false;
                break;
            }
            next[d] = inst.bit(held.find_first()).need.members().front();
        }
        if (ok) {
            std::vector<bool> seen(m + 1, false);
            int d = 1;
            for (int step = 0; step < m; ++step) {
                if (seen[d]) {
                    ok = false;
                    break;
                }
                seen[d] = true;
                d = next[d];
            }
            ok = ok && d == 1;
        }
        c.is_directed_cycle = ok;
    }
    return c;
}

std::size_t cond_count(const Instance& inst, const BitSet& bits, int decoder) {
    const BitSet& held = inst.side_info(decoder);
    if (bits.size() != held.size()) throw std::invalid_argument("bit set size does not match instance");
    return (bits - held).count();
}

DecoderSet initial_subset(const Instance& inst, std::size_t k) {
    const BitSpec& b = inst.bit(k);
    if (b.has.empty()) return DecoderSet::full(inst.decoders());
    return b.need | b.has;
}

Instance swap_decoders(const Instance& inst, int a, int b) {
    auto swap_set = [a, b](DecoderSet set) {
        DecoderSet out = set;
        out.erase(a);
        out.erase(b);
        if (set.contains(a)) out.insert(b);
        if (set.contains(b)) out.insert(a);
        return out;
    };
    std::vector<BitSpec> bits = inst.bits();
    for (BitSpec& spec : bits) {
        spec.need = swap_set(spec.need);
        spec.has = swap_set(spec.has);
    }
    return Instance(inst.decoders(), std::move(bits));
}

}  // namespace indexcode
