#pragma once

#include "dicert/network.hpp"
#include "dicert/selftest.hpp"
#include "dicert/witness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dicert {

// A run is "detected" only when the functional is strictly below this
// margin; the exact-zero boundary is classified not-detected.
inline constexpr double kDetectionThreshold = -1e-9;

enum class Verdict { entangled, not_detected, selftest_failed };
std::string to_string(Verdict v);

struct CertificationReport {
    Verdict verdict;
    SelfTestReport selftest;
    std::optional<double> i_value;  // absent when the self-test failed
    double witness_trace;           // tr(W rho_AB)
    std::string config_digest;
    std::uint64_t seed = 0;         // 0 when no randomness was involved
};

struct SweepRecord {
    double visibility;
    double j;
    double i;
    bool detected;
};

// The correlation functional: the omega-weighted sum of the star-star
// probabilities with both untrusted outcomes on the Bell-projector effect,
// I = sum omega^{zw}_{cd} p(c,+,+,d | z, star, star, w).
double certification_functional(const ProbabilityTable& table, const PauliOmega& omega);

// Witness for the default reference state isotropic(0.8), used by the
// separable baselines.
const WitnessSpec& reference_witness();

// End-to-end run on a two-qubit state: canonical configuration at the given
// auxiliary visibility, self-test of both wings, and on success the
// certification functional for the state's witness (built from the state
// itself when none is supplied; PPT inputs then fail witness construction).
CertificationReport run_pipeline(const DensityMatrix& rho_ab, double visibility_aux,
                                 double selftest_tolerance,
                                 const std::optional<WitnessSpec>& witness = std::nullopt);

// Minimum functional value over seeded random separable states run through
// the full pipeline against a fixed witness (the reference witness by
// default). In adversarial mode each state is additionally evaluated under
// every combination of wing conjugations and the minimum over the four
// variants is taken. Separability keeps the minimum nonnegative either way.
double separable_baseline(int num_states, int num_terms, std::uint64_t seed, bool adversarial,
                          const std::optional<WitnessSpec>& witness = std::nullopt);

// J and I of the canonical configuration across a grid of auxiliary
// visibilities; records are returned sorted by visibility.
std::vector<SweepRecord> noise_sweep(const DensityMatrix& rho_ab, std::vector<double> grid,
                                     const std::optional<WitnessSpec>& witness = std::nullopt);

// Smallest auxiliary visibility at which the functional crosses the
// detection threshold, located by bisection; empty when the state is not
// detected even at visibility 1.
std::optional<double> detection_threshold_visibility(
    const DensityMatrix& rho_ab, const std::optional<WitnessSpec>& witness = std::nullopt,
    double resolution = 1e-12);

}  // namespace dicert
