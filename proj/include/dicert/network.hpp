#pragma once

#include "dicert/qmath.hpp"
#include "dicert/states.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace dicert {

// Collection of POVM effects for one measurement setting. Effects must be
// PSD (above the -1e-7 floor) and sum to the identity.
struct Povm {
    std::vector<Operator> effects;

    explicit Povm(std::vector<Operator> effects_in);
    std::size_t num_outcomes() const { return effects.size(); }
};

// Indexed settings of one party. All settings act on the same space.
struct MeasurementFamily {
    std::vector<Povm> settings;

    explicit MeasurementFamily(std::vector<Povm> settings_in);
    const Operator& effect(std::size_t setting, std::size_t outcome) const;
    std::size_t num_settings() const { return settings.size(); }
    const Dims& dims() const { return settings.front().effects.front().dims; }
};

// Two-outcome convention used throughout: effect index 0 is outcome +1,
// index 1 is outcome -1. For string-valued outcomes the bits of the index
// carry the per-qubit signs (bit 0 means +1), first qubit most significant.
int outcome_sign(std::size_t index);

// The four-party scenario. Global subsystem order is fixed once and for
// all as C, A0, A, B, B0, D: rho_ca0 lives on (C, A0), rho_ab on (A, B),
// rho_b0d on (B0, D). Charlie measures C, Daisy D; Alice's effects act on
// the joint (A0, A) space and Bob's on (B, B0).
struct NetworkConfig {
    DensityMatrix rho_ca0;
    DensityMatrix rho_ab;
    DensityMatrix rho_b0d;
    MeasurementFamily charlie;
    MeasurementFamily alice;
    MeasurementFamily bob;
    MeasurementFamily daisy;
    std::size_t alice_star;  // index of the Bell-projector setting
    std::size_t bob_star;

    NetworkConfig(DensityMatrix rho_ca0_in, DensityMatrix rho_ab_in, DensityMatrix rho_b0d_in,
                  MeasurementFamily charlie_in, MeasurementFamily alice_in,
                  MeasurementFamily bob_in, MeasurementFamily daisy_in,
                  std::size_t alice_star_in, std::size_t bob_star_in);
};

// Canonical honest configuration: auxiliary states v|Phi+><Phi+| +
// (1-v) I/d^2 on both wings; Charlie/Daisy measure the Pauli observables
// sigma_z, sigma_x, sigma_y (Pauli strings for more than one qubit per
// side); Alice/Bob get the six rotated Pauli observables on the auxiliary
// qubit plus the Bell-projector (star) setting on their joint space. For
// local dimension > 2 only the star setting is provided, since the
// self-test is defined for single qubit pairs.
NetworkConfig canonical_config(const DensityMatrix& rho_ab, double visibility_aux);

enum class Wing { charlie, daisy };

// Complex-conjugates one wing's strategy in the computational basis: the
// auxiliary state and both parties' effects on that wing. Real observables
// are unchanged, so this negates exactly the sigma_y-containing ones --
// the alternative anti-commuting triple {sigma_x, -sigma_y, sigma_z}. The
// wing's own marginal statistics are invariant; only correlations through
// the star settings can change.
NetworkConfig conjugate_config(const NetworkConfig& cfg, Wing wing);

// Unnormalized conditional state on the kept side of a bipartite state,
// given an effect on the measured side: tr_measured[(effect (x) 1) rho].
// Summed over a complete effect family this recovers the reduced state.
Operator steering_operator(const DensityMatrix& rho_aux, const Operator& effect,
                           std::size_t measured_subsystem);

struct SettingIndex {
    std::size_t z, x, y, w;
};
struct OutcomeIndex {
    std::size_t c, a, b, d;
};

// Single-entry probability via the steering reduction: the trace is taken
// on the (A0, A, B, B0) space after conditioning both auxiliary states on
// the trusted parties' outcomes.
double joint_probability(const NetworkConfig& cfg, const SettingIndex& s, const OutcomeIndex& o);

// Full statistics p(c,a,b,d|z,x,y,w) plus provenance metadata. Invariants
// (normalization, positivity, no-signaling) are validated on construction.
struct ProbabilityTable {
    std::array<std::size_t, 4> num_settings;  // z, x, y, w
    std::array<std::size_t, 4> num_outcomes;  // c, a, b, d
    std::size_t alice_star;
    std::size_t bob_star;
    std::vector<double> values;
    std::string config_digest;

    double at(std::size_t z, std::size_t x, std::size_t y, std::size_t w,
              std::size_t c, std::size_t a, std::size_t b, std::size_t d) const;
};

ProbabilityTable probability_table(const NetworkConfig& cfg);

// Largest violation of the single-party no-signaling conditions across the
// table (0 for exact quantum statistics up to rounding).
double max_signaling_deviation(const ProbabilityTable& table);

// 64-bit FNV-1a digest over the config's dimensions and matrix entries.
std::string config_digest(const NetworkConfig& cfg);

}  // namespace dicert
