#include "indexcode/scapm.hpp"

#include <sstream>

namespace indexcode {

std::string fraction_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string decimal_string(const Rational& r, int digits) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    bool negative = num < 0;
    if (negative) num = -num;

    BigInt rest = den;
    int places = 0;
    while (rest % 2 == 0) rest /= 2, ++places;
    int fives = 0;
    while (rest % 5 == 0) rest /= 5, ++fives;
    const bool exact = rest == 1;
    places = exact ? std::max(places, fives) : digits;

    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    BigInt scaled = num * scale;
    BigInt q = scaled / den;
    if (!exact && (scaled % den) * 2 >= den) q += 1;

    std::string integer = BigInt(q / scale).str();
    std::string out = (negative ? "-" : "") + integer;
    if (places > 0) {
        std::string frac = BigInt(q % scale).str();
        frac.insert(frac.begin(), static_cast<std::size_t>(places) - frac.size(), '0');
        out += "." + frac;
    }
    return exact ? out : "~" + out;
}

Rational ThetaTable::get(DecoderSet subset, std::size_t bit) const {
    auto row = rows_.find(subset);
    if (row == rows_.end()) return 0;
    auto it = row->second.find(bit);
    return it == row->second.end() ? Rational(0) : it->second;
}

void ThetaTable::set(DecoderSet subset, std::size_t bit, const Rational& value) {
    if (value < 0) throw std::invalid_argument("theta entries are nonnegative");
    if (value == 0) {
        auto row = rows_.find(subset);
        if (row == rows_.end()) return;
        row->second.erase(bit);
        if (row->second.empty()) rows_.erase(row);
        return;
    }
    rows_[subset][bit] = value;
}

void ThetaTable::add(DecoderSet subset, std::size_t bit, const Rational& amount) {
    set(subset, bit, get(subset, bit) + amount);
}

Rational ThetaTable::mass(std::size_t bit) const {
    Rational total = 0;
    for (const auto& [subset, row] : rows_) {
        auto it = row.find(bit);
        if (it != row.end()) total += it->second;
    }
    return total;
}

std::size_t ThetaTable::entry_count() const {
    std::size_t n = 0;
    for (const auto& [subset, row] : rows_) n += row.size();
    return n;
}

ThetaTable s_step1(const Instance& inst) {
    ThetaTable theta;
    for (std::size_t k = 0; k < inst.size(); ++k) theta.set(initial_subset(inst, k), k, 1);
    return theta;
}

Rational frac_entropy(const Instance& inst, const ThetaTable& theta, DecoderSet subset, int decoder) {
    const BitSet& held = inst.side_info(decoder);
    Rational total = 0;
    auto row = theta.rows().find(subset);
    if (row == theta.rows().end()) return total;
    for (const auto& [k, value] : row->second) {
        if (!held.test(k)) total += value;
    }
    return total;
}

ThetaStepResult s_step2(const Instance& inst, ThetaTable theta, std::size_t max_iterations) {
    ThetaStepResult out;
    const int m = inst.decoders();
    for (int level = 1; level < m; ++level) {
        std::vector<DecoderSet> pending;
        for (const auto& [subset, row] : theta.rows()) {
            if (subset.size() == level) pending.push_back(subset);
        }
        for (DecoderSet subset : pending) {
            const std::vector<int> members = subset.members();
            const std::vector<int> outside = subset.complement(m).members();
            const Rational share_count = static_cast<int>(outside.size());
            while (true) {
                int min_decoder = 0;
                int max_decoder = 0;
                Rational low;
                Rational high;
                for (int d : members) {
                    Rational h = frac_entropy(inst, theta, subset, d);
                    if (min_decoder == 0 || h < low) low = h, min_decoder = d;
                    if (max_decoder == 0 || h > high) high = h, max_decoder = d;
                }
                const Rational gap = high - low;
                if (gap == 0) break;

                auto row = theta.rows().find(subset);
                if (row == theta.rows().end()) break;
                const BitSet& lo_held = inst.side_info(min_decoder);
                const BitSet& hi_held = inst.side_info(max_decoder);

                // Entirely-excess candidate: largest theta not above the gap. Otherwise the
                // smallest theta in E, of which only the gap is promoted.
                std::size_t entire_pick = 0;
                std::size_t partial_pick = 0;
                bool have_entire = false;
                bool have_partial = false;
                Rational entire_value;
                Rational partial_value;
                for (const auto& [k, value] : row->second) {
                    if (!lo_held.test(k) || hi_held.test(k)) continue;
                    if (value <= gap && (!have_entire || value > entire_value)) {
                        entire_pick = k, entire_value = value, have_entire = true;
                    }
                    if (!have_partial || value < partial_value) {
                        partial_pick = k, partial_value = value, have_partial = true;
                    }
                }
                if (!have_partial) break;

                if (++out.iterations > max_iterations) {
                    throw std::logic_error("theta promotion did not terminate within the iteration bound");
                }
                const std::size_t k = have_entire ? entire_pick : partial_pick;
                const Rational amount = have_entire ? entire_value : gap;
                theta.add(subset, k, -amount);
                const Rational share = amount / share_count;
                for (int d : outside) theta.add(subset | DecoderSet::single(d), k, share);
                out.trace.push_back({k, subset, amount, have_entire, min_decoder, max_decoder});
            }
        }
    }
    out.theta = std::move(theta);
    return out;
}

ExpandedPlan expand(const Instance& inst, const ThetaTable& theta) {
    ExpandedPlan plan;
    BigInt t = 1;
    for (const auto& [subset, row] : theta.rows()) {
        for (const auto& [k, value] : row) t = boost::multiprecision::lcm(t, denominator(value));
    }
    if (t * inst.size() > kMaxBits) {
        throw GuardError("expanded block length " + t.str() + " exceeds the bit cap");
    }
    plan.t = t.convert_to<std::size_t>();

    std::vector<BitSpec> bits;
    for (std::size_t k = 0; k < inst.size(); ++k) {
        for (std::size_t j = 0; j < plan.t; ++j) {
            BitSpec spec = inst.bit(k);
            if (plan.t > 1) spec.label += "." + std::to_string(j + 1);
            bits.push_back(std::move(spec));
            plan.parent.push_back(k);
        }
    }
    plan.instance = Instance(inst.decoders(), std::move(bits));

    // Sub-bits of each source bit go to messages in ascending bitmask order.
    std::map<std::uint32_t, DecoderSet> by_mask;
    for (const auto& [subset, row] : theta.rows()) by_mask.emplace(subset.mask(), subset);
    std::vector<std::size_t> next_sub(inst.size(), 0);
    std::map<DecoderSet, std::vector<std::size_t>> assigned;
    for (const auto& [mask, subset] : by_mask) {
        for (const auto& [k, value] : theta.rows().at(subset)) {
            Rational count = value * Rational(plan.t);
            std::size_t n = numerator(count).convert_to<std::size_t>();
            for (std::size_t j = 0; j < n; ++j) assigned[subset].push_back(k * plan.t + next_sub[k]++);
        }
    }
    for (std::size_t k = 0; k < inst.size(); ++k) {
        if (next_sub[k] != plan.t) throw std::logic_error("theta mass of bit " + inst.label(k) + " is not 1");
    }
    for (auto& [subset, subs] : assigned) {
        std::sort(subs.begin(), subs.end());
        Message& msg = plan.table.get_or_insert(subset);
        for (std::size_t e : subs) {
            DecoderSet origin = initial_subset(inst, plan.parent[e]);
            msg.components.push_back(Component::singleton(plan.instance, e, origin, subset != origin));
        }
    }
    return plan;
}

ScapmResult run_scapm(const Instance& inst) {
    ScapmResult result;
    result.initial = s_step1(inst);
    ThetaStepResult promoted = s_step2(inst, result.initial);
    result.theta = std::move(promoted.theta);
    result.theta_trace = std::move(promoted.trace);
    result.plan = expand(inst, result.theta);
    result.t = result.plan.t;
    StepResult merged = step3(result.plan.instance, std::move(result.plan.table));
    result.plan.table = std::move(merged.table);
    result.xor_trace = std::move(merged.trace);
    result.rate = Rational(capm_rate(result.plan.instance, result.plan.table)) / Rational(result.t);
    return result;
}

Rational theta_rate(const Instance& inst, const ThetaTable& theta) {
    Rational total = 0;
    for (const auto& [subset, row] : theta.rows()) {
        Rational worst = 0;
        for (int d : subset.members()) worst = std::max(worst, frac_entropy(inst, theta, subset, d));
        total += worst;
    }
    return total;
}

std::string render_theta(const Instance& inst, const ThetaTable& theta) {
    std::ostringstream out;
    for (const auto& [subset, row] : theta.rows()) {
        out << "U" << subset.str() << ":";
        for (const auto& [k, value] : row) out << ' ' << inst.label(k) << '=' << fraction_string(value);
        out << '\n';
    }
    return out.str();
}

std::string render_theta_trace(const Instance& inst, const ThetaTrace& trace) {
    std::ostringstream out;
    for (const ThetaEvent& e : trace) {
        out << "promoted bit=" << inst.label(e.bit) << " from=" << e.from.str() << " amount="
            << fraction_string(e.amount) << " mode=" << (e.entire ? "entire" : "partial") << " i*=" << e.min_decoder
            << " j*=" << e.max_decoder << '\n';
    }
    return out.str();
}

}  // namespace indexcode
