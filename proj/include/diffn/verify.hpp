#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffn/fields.hpp"

namespace diffn {

// One verification run: a fixed field, degree, size bound and seed. The same
// config always produces the same instance stream and the same report body.
struct GenConfig {
    std::uint64_t seed = 0;
    FieldSpec field = FieldSpec::rationals();
    int n = 2;
    std::size_t max_dim = 6;
    std::size_t trials = 100;
};

struct FailureRecord {
    std::size_t trial = 0;
    std::string message;
    std::string counterexample;  // DFN serialisations of the trial's instances
};

struct PropertyResult {
    std::string name;
    std::size_t trials = 0;
    std::vector<FailureRecord> failures;
    double wall_ms = 0.0;
};

struct VerifyReport {
    GenConfig cfg;
    std::vector<PropertyResult> results;  // sorted by property name

    std::size_t total_failures() const;
    bool ok() const { return total_failures() == 0; }
    std::string body() const;     // deterministic, excludes wall times
    std::string timings() const;  // per-property wall clock lines
};

std::vector<std::string> verify_property_names();

// Runs every registered property (or just `only`) for cfg.trials seeded
// trials each. Throws InputError for bad configs or unknown property names.
VerifyReport run_verify(const GenConfig& cfg, const std::optional<std::string>& only = std::nullopt);

}  // namespace diffn
