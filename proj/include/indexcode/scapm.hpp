#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "indexcode/capm.hpp"
#include "indexcode/instance.hpp"

namespace indexcode {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "21/2", or "5" for integers.
std::string fraction_string(const Rational& r);
/// Exact decimal when the denominator has only factors 2 and 5, otherwise rounded to
/// `digits` places with a leading '~'.
std::string decimal_string(const Rational& r, int digits = 6);

/// theta(I, k): fraction of source bit k carried by message U_I. Zero entries are absent.
class ThetaTable {
public:
    using Row = std::map<std::size_t, Rational>;

    Rational get(DecoderSet subset, std::size_t bit) const;
    void set(DecoderSet subset, std::size_t bit, const Rational& value);
    void add(DecoderSet subset, std::size_t bit, const Rational& amount);

    /// Rows keyed by subset, iterated in (level, bitmask) order.
    const std::map<DecoderSet, Row>& rows() const { return rows_; }
    /// Total mass of bit k over all subsets.
    Rational mass(std::size_t bit) const;
    std::size_t entry_count() const;

    bool operator==(const ThetaTable&) const = default;

private:
    std::map<DecoderSet, Row> rows_;
};

struct ThetaEvent {
    std::size_t bit = 0;
    DecoderSet from;
    Rational amount;      // total mass removed from U_from
    bool entire = false;  // the whole entry was excess
    int min_decoder = 0;
    int max_decoder = 0;
};

using ThetaTrace = std::vector<ThetaEvent>;

struct ThetaStepResult {
    ThetaTable theta;
    ThetaTrace trace;
    std::size_t iterations = 0;
};

/// Each source bit expanded into t sub-bits (labels "<label>.<j>" when t > 1), with the
/// messages built from theta and then XOR-merged.
struct ExpandedPlan {
    std::size_t t = 1;
    Instance instance;
    MessageTable table;
    std::vector<std::size_t> parent;  // expanded bit -> source bit
};

struct ScapmResult {
    Rational rate;
    std::size_t t = 1;
    ThetaTable initial;
    ThetaTable theta;
    ThetaTrace theta_trace;
    ExpandedPlan plan;
    Trace xor_trace;
};

ThetaTable s_step1(const Instance& inst);

/// Fractional conditional entropy: sum of theta(I, k) over bits k not held by decoder j.
Rational frac_entropy(const Instance& inst, const ThetaTable& theta, DecoderSet subset, int decoder);

/// Promotes excess mass level by level until every processed message is balanced.
/// Throws std::logic_error if `max_iterations` promotions are exceeded.
ThetaStepResult s_step2(const Instance& inst, ThetaTable theta, std::size_t max_iterations = 1'000'000);

/// Converts theta to integer sub-bit counts at the least common block length t. The
/// returned table has not been XOR-merged yet.
ExpandedPlan expand(const Instance& inst, const ThetaTable& theta);

ScapmResult run_scapm(const Instance& inst);

/// Fractional rate of a theta table: sum over I of max_{i in I} frac_entropy.
Rational theta_rate(const Instance& inst, const ThetaTable& theta);

std::string render_theta(const Instance& inst, const ThetaTable& theta);
std::string render_theta_trace(const Instance& inst, const ThetaTrace& trace);

}  // namespace indexcode
