#pragma once

#include "opuc/coeffseq.hpp"
#include "opuc/io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opuc {

struct VerifyOutcome {
    std::string id;
    Json parameters;
    Json measured;
    bool pass = false;
};

struct VerifyConfig {
    // Overrides the suite's default family where the suite takes one.
    std::optional<CoefficientFamily> family;
    std::vector<int> ns; // empty: suite defaults
    int m = 8;
    int trials = 100;
    std::uint64_t seed = 0;
};

const std::vector<std::string>& suite_names();

// Throws Config for an unknown suite name.
std::vector<VerifyOutcome> run_suite(const std::string& name, const VerifyConfig& config);

Json outcomes_to_json(const std::string& suite, const std::vector<VerifyOutcome>& outcomes);

// Determinant by Gaussian elimination with partial pivoting.
Complex lu_determinant(std::vector<std::vector<Complex>> a);

// Points of the sample grids used by the suites.
// `rings` radii r_max k / rings (k = 1..rings), `per_ring` angles each, rotated
// off the real axis by half a step.
std::vector<Complex> disk_grid(double r_max, int rings, int per_ring);
// radii evenly spaced in [r_min, r_max], angles pi/8 + k 2pi / per_ring.
std::vector<Complex> annulus_grid(double r_min, double r_max, int rings, int per_ring);

} // namespace opuc
