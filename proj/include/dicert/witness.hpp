#pragma once

#include "dicert/qmath.hpp"
#include "dicert/states.hpp"

#include <cstdint>
#include <vector>

namespace dicert {

// Coefficients of a Hermitian two-sided operator over the Pauli-projector
// family pi_{c|z} (x) pi_{d|w}. For one qubit per side the indices are
// z, w in [0,3) (axes sigma_z, sigma_x, sigma_y) and c, d in [0,2)
// (outcomes +1, -1). For N qubits per side the z index runs over the 3^N
// axis strings (base-3 digits, first factor most significant) and the c
// index over the 2^N sign strings (bits, first factor most significant;
// bit 0 means outcome +1).
struct PauliOmega {
    int qubits_per_side = 1;
    std::vector<double> values;  // flat [z][w][c][d]

    std::size_t num_settings() const;  // 3^N
    std::size_t num_outcomes() const;  // 2^N
    double at(std::size_t z, std::size_t w, std::size_t c, std::size_t d) const;
    double& at(std::size_t z, std::size_t w, std::size_t c, std::size_t d);
};

// Canonical Pauli-projector decomposition of a Hermitian operator on
// N+N qubits. The projector family over-spans the Hermitian space, so the
// coefficients are fixed by spreading each identity factor evenly over the
// three axes; the reconstruction identity then holds exactly.
PauliOmega decompose_pauli(const Operator& w);

// Sum of omega-weighted projector tensor products (the reconstruction side
// of the decomposition identity).
Operator omega_reconstruct(const PauliOmega& omega);

// Hermitian witness together with its projector coefficients. The
// reconstruction invariant is validated on construction.
struct WitnessSpec {
    Operator w;
    PauliOmega omega;

    explicit WitnessSpec(Operator witness);
};

// Witness for an NPT state: (|eta><eta|)^{T_B} built from the most negative
// eigenvector eta of rho^{T_B}. Throws for PPT inputs (all separable states
// and, beyond two qubits, PPT-entangled states).
WitnessSpec witness_from_state(const DensityMatrix& rho);

struct WitnessReport {
    double min_separable_value;
    double target_value;
};

// Evaluates tr(W rho) and estimates the minimum of <ab|W|ab> over product
// states: seeded random product samples, each refined by alternating
// local optimization (the conditioned single-side problem is an exact
// eigenvalue problem).
WitnessReport verify_witness(const WitnessSpec& ws, const DensityMatrix& rho,
                             int samples, std::uint64_t seed);

}  // namespace dicert
