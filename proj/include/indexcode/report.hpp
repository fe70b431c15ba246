#pragma once

#include <optional>
#include <string>
#include <vector>

#include "indexcode/capm.hpp"
#include "indexcode/closed_form.hpp"
#include "indexcode/dsm_bound.hpp"
#include "indexcode/oracle.hpp"
#include "indexcode/scapm.hpp"

namespace indexcode {

enum class Certificate { bounds_met, gm2_form, dag, directed_cycle, no_excess, none };

/// "bounds-met", "gm2-form", "dag", "directed-cycle", "no-excess", "none".
std::string certificate_name(Certificate c);

struct CheckOptions {
    bool run_oracle = true;
    std::size_t max_oracle_bits = kDefaultOracleBits;
};

/// Everything `icode check` knows about one instance.
struct RateReport {
    int decoders = 0;
    std::size_t bits = 0;
    Classification classification;

    ChainWitness lower;
    CapmResult capm;
    ScapmResult scapm;

    std::optional<OracleResult> oracle;
    std::string oracle_skipped;  // reason, when the oracle did not run
    bool guard_violation = false;

    std::optional<Gm2Result> gm2;
    std::optional<DagResult> dag;
    std::optional<std::size_t> directed_cycle;
    std::optional<std::size_t> no_excess;

    bool certified_optimal = false;
    Certificate certificate = Certificate::none;
    std::optional<Rational> optimal_rate;
    std::vector<std::string> notes;
};

RateReport check_instance(const Instance& inst, const CheckOptions& options = {});

/// Human-readable table, one quantity per line.
std::string render_report(const Instance& inst, const RateReport& report);

struct SuiteRow {
    std::string fixture;
    std::string quantity;
    std::string expected;
    std::string actual;
    bool ok = false;
};

/// Runs every reference fixture and compares against the pinned values.
std::vector<SuiteRow> run_reference_suite();

}  // namespace indexcode
