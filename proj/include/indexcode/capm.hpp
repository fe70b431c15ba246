#pragma once

#include <optional>
#include <string>
#include <vector>

#include "indexcode/instance.hpp"

namespace indexcode {

/// A transmitted symbol: the XOR of one or more source bits.
///
/// For a singleton, need/has are the bit's own sets. XOR merges take the union of the
/// needs and the intersection of the holders.
struct Component {
    std::vector<std::size_t> bits;  // ascending
    DecoderSet need;
    DecoderSet has;
    DecoderSet origin;  // Step-1 message the content was first placed in
    bool excess = false;

    static Component singleton(const Instance& inst, std::size_t k, DecoderSet origin, bool excess = false);
    bool known_by(const BitSet& side_info) const;
    std::size_t lead() const { return bits.front(); }
};

/// U_I: components decoded by exactly the decoders in `subset`.
struct Message {
    DecoderSet subset;
    std::vector<Component> components;
};

/// The nonempty messages, kept sorted by (level, subset bitmask).
class MessageTable {
public:
    const std::vector<Message>& messages() const { return messages_; }
    std::vector<Message>& messages() { return messages_; }

    Message* find(DecoderSet subset);
    const Message* find(DecoderSet subset) const;
    /// Returns the message for `subset`, inserting an empty one in sorted position if needed.
    Message& get_or_insert(DecoderSet subset);
    void erase_empty();

    std::size_t component_count() const;

private:
    std::vector<Message> messages_;
};

enum class TraceKind { placed, promoted, xored };

/// One replayable step of the heuristic. Bits are identified by index.
struct TraceEvent {
    TraceKind kind = TraceKind::placed;
    std::size_t bit = 0;      // placed/promoted: the bit; xored: lead bit of the surviving component
    std::size_t other = 0;    // xored: lead bit of the absorbed component
    DecoderSet from;          // promoted: source message
    DecoderSet to;            // placed/promoted: destination; xored: the message
    int min_decoder = 0;      // promoted: i*
    int max_decoder = 0;      // promoted: j*
};

using Trace = std::vector<TraceEvent>;

struct StepResult {
    MessageTable table;
    Trace trace;
};

struct CapmResult {
    std::size_t rate = 0;
    std::size_t rate_after_step1 = 0;
    std::size_t rate_after_step2 = 0;
    MessageTable step1_table;
    MessageTable table;
    Trace trace;  // all three steps, in order
};

StepResult step1(const Instance& inst);
StepResult step2(const Instance& inst, MessageTable table);
StepResult step3(const Instance& inst, MessageTable table);

/// H(U_I | Y_i): number of components of `msg` not fully held by decoder i.
std::size_t message_rate(const Instance& inst, const Message& msg, int decoder);
/// Sum over messages of the worst-case decoder's conditional entropy.
std::size_t capm_rate(const Instance& inst, const MessageTable& table);

CapmResult run_capm(const Instance& inst);

struct Feasibility {
    bool ok = true;
    int decoder = 0;          // first decoder that cannot decode, when !ok
    std::size_t bit = 0;      // one of its unrecoverable demands
};

/// Peeling decoder: each decoder starts from its side information and repeatedly solves
/// components of the messages addressed to it that have exactly one unknown bit.
Feasibility verify_feasible(const Instance& inst, const MessageTable& table);

/// One line per event, stable field order.
std::string render_trace(const Instance& inst, const Trace& trace);
/// Applies promoted/xored events to a Step-1 table.
MessageTable replay_trace(const Instance& inst, MessageTable table, const Trace& trace);

/// Count of Step-2 promotions in a trace.
std::size_t promotion_count(const Trace& trace);

std::string render_table(const Instance& inst, const MessageTable& table);

}  // namespace indexcode
