#include "indexcode/capm.hpp"

#include <algorithm>
#include <sstream>

namespace indexcode {

Component Component::singleton(const Instance& inst, std::size_t k, DecoderSet origin, bool excess) {
    const BitSpec& b = inst.bit(k);
    return Component{{k}, b.need, b.has, origin, excess};
}

bool Component::known_by(const BitSet& side_info) const {
    return std::all_of(bits.begin(), bits.end(), [&](std::size_t k) { return side_info.test(k); });
}

Message* MessageTable::find(DecoderSet subset) {
    auto it = std::lower_bound(messages_.begin(), messages_.end(), subset,
                               [](const Message& msg, DecoderSet s) { return msg.subset < s; });
    return (it != messages_.end() && it->subset == subset) ? &*it : nullptr;
}

const Message* MessageTable::find(DecoderSet subset) const {
    return const_cast<MessageTable*>(this)->find(subset);
}

Message& MessageTable::get_or_insert(DecoderSet subset) {
    auto it = std::lower_bound(messages_.begin(), messages_.end(), subset,
                               [](const Message& msg, DecoderSet s) { return msg.subset < s; });
    if (it != messages_.end() && it->subset == subset) return *it;
    return *messages_.insert(it, Message{subset, {}});
}

void MessageTable::erase_empty() {
    std::erase_if(messages_, [](const Message& msg) { return msg.components.empty(); });
}

std::size_t MessageTable::component_count() const {
    std::size_t n = 0;
    for (const Message& msg : messages_) n += msg.components.size();
    return n;
}

std::size_t message_rate(const Instance& inst, const Message& msg, int decoder) {
    if (!msg.subset.contains(decoder)) {
        throw std::invalid_argument("decoder " + std::to_string(decoder) + " does not decode message " +
                                    msg.subset.str());
    }
    const BitSet& held = inst.side_info(decoder);
    return static_cast<std::size_t>(std::count_if(msg.components.begin(), msg.components.end(),
                                                  [&](const Component& c) { return !c.known_by(held); }));
}

std::size_t capm_rate(const Instance& inst, const MessageTable& table) {
    std::size_t total = 0;
    for (const Message& msg : table.messages()) {
        std::size_t worst = 0;
        for (int d : msg.subset.members()) worst = std::max(worst, message_rate(inst, msg, d));
        total += worst;
    }
    return total;
}

StepResult step1(const Instance& inst) {
    StepResult out;
    for (std::size_t k = 0; k < inst.size(); ++k) {
        DecoderSet target = initial_subset(inst, k);
        out.table.get_or_insert(target).components.push_back(Component::singleton(inst, k, target));
        out.trace.push_back({TraceKind::placed, k, 0, {}, target, 0, 0});
    }
    return out;
}

namespace {

// Destination for a bit leaving U_I: the existing one-level-up superset whose added
// decoder is smallest, else I plus the smallest decoder missing from I.
DecoderSet promotion_target(const MessageTable& table, DecoderSet subset, int m) {
    for (int d = 1; d <= m; ++d) {
        if (subset.contains(d)) continue;
        DecoderSet candidate = subset | DecoderSet::single(d);
        const Message* msg = table.find(candidate);
        if (msg != nullptr && !msg->components.empty()) return candidate;
    }
    return subset | DecoderSet::single(subset.first_missing(m));
}

}  // namespace

StepResult step2(const Instance& inst, MessageTable table) {
    StepResult out;
    const int m = inst.decoders();
    auto& messages = table.messages();
    std::size_t idx = 0;
    while (idx < messages.size()) {
        const DecoderSet subset = messages[idx].subset;
        if (subset.size() >= m) {
            ++idx;
            continue;
        }
        while (!messages[idx].components.empty()) {
            const std::vector<int> members = subset.members();
            int min_decoder = 0;
            int max_decoder = 0;
            std::size_t min_rate = 0;
            std::size_t max_rate = 0;
            for (int d : members) {
                std::size_t r = message_rate(inst, messages[idx], d);
                if (min_decoder == 0 || r < min_rate) {
                    min_rate = r;
                    min_decoder = d;
                }
                if (max_decoder == 0 || r > max_rate) {
                    max_rate = r;
                    max_decoder = d;
                }
            }
            if (min_rate == max_rate) break;

            const BitSet& low = inst.side_info(min_decoder);
            const BitSet& high = inst.side_info(max_decoder);
            auto& comps = messages[idx].components;
            auto pick = std::find_if(comps.begin(), comps.end(),
                                     [&](const Component& c) { return c.known_by(low) && !c.known_by(high); });
            if (pick == comps.end()) throw std::logic_error("unbalanced message without an excess component");

            Component moved = std::move(*pick);
            comps.erase(pick);
            moved.excess = true;
            const DecoderSet target = promotion_target(table, subset, m);
            out.trace.push_back({TraceKind::promoted, moved.lead(), 0, subset, target, min_decoder, max_decoder});
            // Targets sit one level up, so insertion never shifts messages at or before idx.
            table.get_or_insert(target).components.push_back(std::move(moved));
        }
        if (messages[idx].components.empty()) {
            messages.erase(messages.begin() + static_cast<std::ptrdiff_t>(idx));
        } else {
            ++idx;
        }
    }
    out.table = std::move(table);
    return out;
}

namespace {

bool xor_compatible(const Component& a, const Component& b) {
    return a.excess && b.excess && a.origin == b.origin && a.need.subset_of(b.has) && b.need.subset_of(a.has);
}

void merge_into(Component& keep, const Component& absorb) {
    keep.bits.insert(keep.bits.end(), absorb.bits.begin(), absorb.bits.end());
    std::sort(keep.bits.begin(), keep.bits.end());
    keep.need = keep.need | absorb.need;
    keep.has = keep.has & absorb.has;
}

}  // namespace

StepResult step3(const Instance& /*inst*/, MessageTable table) {
    StepResult out;
    for (Message& msg : table.messages()) {
        auto& comps = msg.components;
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < comps.size() && !merged; ++i) {
                for (std::size_t j = i + 1; j < comps.size(); ++j) {
                    if (!xor_compatible(comps[i], comps[j])) continue;
                    out.trace.push_back({TraceKind::xored, comps[i].lead(), comps[j].lead(), {}, msg.subset, 0, 0});
                    merge_into(comps[i], comps[j]);
                    comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                    break;
                }
            }
        }
    }
    out.table = std::move(table);
    return out;
}

CapmResult run_capm(const Instance& inst) {
    CapmResult result;
    StepResult s1 = step1(inst);
    result.step1_table = s1.table;
    result.rate_after_step1 = capm_rate(inst, s1.table);
    result.trace = std::move(s1.trace);

    StepResult s2 = step2(inst, std::move(s1.table));
    result.rate_after_step2 = capm_rate(inst, s2.table);
    result.trace.insert(result.trace.end(), s2.trace.begin(), s2.trace.end());

    StepResult s3 = step3(inst, std::move(s2.table));
    result.trace.insert(result.trace.end(), s3.trace.begin(), s3.trace.end());
    result.table = std::move(s3.table);
    result.rate = capm_rate(inst, result.table);
    return result;
}

Feasibility verify_feasible(const Instance& inst, const MessageTable& table) {
    for (int d = 1; d <= inst.decoders(); ++d) {
        BitSet known = inst.side_info(d);
        std::vector<const Component*> heard;
        for (const Message& msg : table.messages()) {
            if (!msg.subset.contains(d)) continue;
            for (const Component& c : msg.components) heard.push_back(&c);
        }
        bool progress = true;
        while (progress) {
            progress = false;
            for (const Component* c : heard) {
                std::size_t unknown = 0;
                std::size_t last = 0;
                for (std::size_t k : c->bits) {
                    if (!known.test(k)) {
                        ++unknown;
                        last = k;
                    }
                }
                if (unknown == 1) {
                    known.set(last);
                    progress = true;
                }
            }
        }
        BitSet missing = inst.demand(d) - known;
        if (missing.any()) return {false, d, missing.find_first()};
    }
    return {};
}

namespace {

std::string kind_name(TraceKind kind) {
    switch (kind) {
        case TraceKind::placed: return "placed";
        case TraceKind::promoted: return "promoted";
        case TraceKind::xored: return "xored";
    }
    return "?";
}

std::string component_text(const Instance& inst, const Component& c) {
    std::string out;
    for (std::size_t i = 0; i < c.bits.size(); ++i) {
        if (i > 0) out += '^';
        out += inst.label(c.bits[i]);
    }
    if (c.excess) out += '*';
    return out;
}

}  // namespace

std::string render_trace(const Instance& inst, const Trace& trace) {
    std::ostringstream out;
    for (const TraceEvent& e : trace) {
        out << kind_name(e.kind);
        switch (e.kind) {
            case TraceKind::placed:
                out << " bit=" << inst.label(e.bit) << " to=" << e.to.str();
                break;
            case TraceKind::promoted:
                out << " bit=" << inst.label(e.bit) << " from=" << e.from.str() << " to=" << e.to.str()
                    << " i*=" << e.min_decoder << " j*=" << e.max_decoder;
                break;
            case TraceKind::xored:
                out << " at=" << e.to.str() << " keep=" << inst.label(e.bit) << " absorb=" << inst.label(e.other);
                break;
        }
        out << '\n';
    }
    return out.str();
}

MessageTable replay_trace(const Instance& inst, MessageTable table, const Trace& trace) {
    auto locate = [](Message& msg, std::size_t lead) {
        auto it = std::find_if(msg.components.begin(), msg.components.end(),
                               [lead](const Component& c) { return c.lead() == lead; });
        if (it == msg.components.end()) throw std::invalid_argument("trace references a missing component");
        return it;
    };
    for (const TraceEvent& e : trace) {
        if (e.kind == TraceKind::placed) continue;
        if (e.kind == TraceKind::promoted) {
            Message* src = table.find(e.from);
            if (src == nullptr) throw std::invalid_argument("trace promotes from a missing message");
            auto it = locate(*src, e.bit);
            Component moved = std::move(*it);
            src->components.erase(it);
            moved.excess = true;
            table.get_or_insert(e.to).components.push_back(std::move(moved));
            continue;
        }
        table.erase_empty();
        Message* msg = table.find(e.to);
        if (msg == nullptr) throw std::invalid_argument("trace merges in a missing message");
        auto keep = locate(*msg, e.bit);
        auto absorb = locate(*msg, e.other);
        merge_into(*keep, *absorb);
        msg->components.erase(absorb);
    }
    table.erase_empty();
    (void)inst;
    return table;
}

std::size_t promotion_count(const Trace& trace) {
    return static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [](const TraceEvent& e) { return e.kind == TraceKind::promoted; }));
}

std::string render_table(const Instance& inst, const MessageTable& table) {
    std::ostringstream out;
    for (const Message& msg : table.messages()) {
        std::size_t worst = 0;
        for (int d : msg.subset.members()) worst = std::max(worst, message_rate(inst, msg, d));
        out << "U" << msg.subset.str() << " rate=" << worst << ":";
        for (const Component& c : msg.components) out << ' ' << component_text(inst, c);
        out << '\n';
    }
    return out.str();
}

}  // namespace indexcode
