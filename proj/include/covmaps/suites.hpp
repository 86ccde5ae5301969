#pragma once
// Invariant suites shared by the acceptance harness and `covmaps selftest`.
// Full runs use the documented sample counts and dimension sweeps; reduced
// runs pin every suite to a single dimension with smaller sample counts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace covmaps {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;      // worst residual, or a count for counting checks
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteResult {
    int id = 0;
    std::string title;
    std::vector<SuiteCheck> checks;
    double seconds = 0.0;

    bool passed() const;
};

struct SuiteOptions {
    std::optional<int> n;  // pin the dimension sweep
    bool reduced = false;  // smaller sample counts
    std::uint64_t seed = 0x5eed;
};

SuiteResult basis_suite(const SuiteOptions& opts);
SuiteResult frame_suite(const SuiteOptions& opts);
SuiteResult covariance_suite(const SuiteOptions& opts);
SuiteResult projector_suite(const SuiteOptions& opts);
SuiteResult structure_suite(const SuiteOptions& opts);
SuiteResult exp_commutation_suite(const SuiteOptions& opts);
SuiteResult dilation_suite(const SuiteOptions& opts);
SuiteResult dynamics_suite(const SuiteOptions& opts);

/// Suites 1..8 in order.
std::vector<SuiteResult> run_suites(const SuiteOptions& opts);

}  // namespace covmaps
