#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "opcalc/decomp.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

struct SuiteConfig {
    std::vector<std::size_t> dims{2, 4, 8};
    std::size_t trials = 200;
    std::uint64_t seed = 42;
    double tol_algebraic = 1e-9;
    double tol_stochastic = 1e-6;
    std::vector<std::string> properties;  // empty or {"all"}: the full standard set
    std::size_t threads = 0;              // 0: pick from OPCALC_THREADS or hardware

    void validate() const;
};

/// Outcome of one property over the whole ensemble. max_violation is a
/// signed slack, (lhs - rhs) / scale, rescaled so the property tolerance is
/// the pass boundary for every check it aggregates; failures = 0 exactly
/// when max_violation <= tolerance.
struct PropertyRecord {
    std::string property_id;
    std::string paper_anchor;
    double tolerance = 0.0;
    std::size_t trials_run = 0;
    std::size_t failures = 0;
    double max_violation = 0.0;
    double elapsed_ms = 0.0;
    std::vector<nlohmann::json> failure_examples;  // offending inputs, for replay
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<PropertyRecord> records;
    bool pass = false;
};

/// Runs every requested property over trials x dims instances. Deterministic
/// for a fixed (seed, dims, trials): each trial draws from a substream keyed
/// by (property, dim, trial). Numerical errors inside a trial are recorded
/// as failures, not crashes. Unknown property names raise UnknownProperty.
VerificationReport run_suite(const SuiteConfig& config);

/// Ids of the standard properties (the set "all" expands to).
std::vector<std::string> known_properties();

/// Diagnostic ids runnable by name but excluded from "all" (the mutation
/// self-check lives here).
std::vector<std::string> diagnostic_properties();

/// Anchors the registry must cover; returns the uncovered ones (empty in a
/// healthy build). A unit test and the CLI both assert emptiness.
std::vector<std::string> missing_anchor_coverage();

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

/// Shift counterexample record: the truncated unilateral shift has zero
/// standard-basis absolute diagonal sum while its trace norm n - 1 grows
/// without bound. ratio is +inf when the diagonal sum vanishes.
struct ShiftRecord {
    std::size_t n = 0;
    double abs_diag_sum = 0.0;
    double trace_norm = 0.0;
    double ratio = 0.0;
};
ShiftRecord shift_report(std::size_t n, const Tolerances& tol = {});

/// Finite-rank approximation trail: residual ||T - T_k||_1 for k = 0..dim.
/// Nonincreasing; the final entry vanishes.
std::vector<std::pair<std::size_t, double>> density_report(const Matrix& t,
                                                           const Tolerances& tol = {});

}  // namespace opcalc
