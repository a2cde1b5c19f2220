#pragma once

#include "dicert/qmath.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace dicert {

// Validated quantum state: Hermitian, unit trace, eigenvalues above the
// PSD floor.
struct DensityMatrix {
    Operator op;

    explicit DensityMatrix(Operator o);
    DensityMatrix(Matrix m, Dims d) : DensityMatrix(Operator(std::move(m), std::move(d))) {}

    Eigen::Index dim() const { return op.dim(); }
    const Dims& dims() const { return op.dims; }
    const Matrix& mat() const { return op.mat; }
};

// Measurement-setting order: z = 1 -> sigma_z, 2 -> sigma_x, 3 -> sigma_y.
enum class PauliAxis : int { z = 1, x = 2, y = 3 };

PauliAxis pauli_axis(int index);          // 1..3
Matrix pauli_matrix(PauliAxis axis);
Matrix pauli_matrix(int index);           // 0 -> identity, 1..3 as above

// Projector onto the +1/-1 eigenspace of a Pauli observable:
// (I + c * sigma_axis) / 2.
struct PauliProjector {
    int outcome;  // +1 or -1
    PauliAxis axis;
    Operator op;

    PauliProjector(int outcome, PauliAxis axis);
};

// p |Phi+><Phi+| + (1-p) I/4 on two qubits.
DensityMatrix isotropic(double p);

// (1/sqrt(d)) sum_i |ii>, dims {d, d}.
Ket bell_phi_plus(Eigen::Index d);

// One of "0", "1", "+", "-", "R", "L".
Ket pauli_eigenstate(std::string_view label);

// Convex mixture of `num_terms` Haar-random pure product states with
// uniform-simplex weights. Deterministic for a fixed seed.
DensityMatrix random_separable(int num_terms, std::uint64_t seed,
                               Eigen::Index dim_a = 2, Eigen::Index dim_b = 2);

// Hilbert-Schmidt (Ginibre) random density matrix. Test/sampling utility.
DensityMatrix random_density(const Dims& dims, std::uint64_t seed);

// Haar-random pure state of dimension d.
Ket haar_random_ket(Eigen::Index d, std::mt19937_64& rng);

// Ground truth entanglement oracle via the partial-transpose criterion:
// true iff min eig of rho^{T_B} < -1e-9. Exact for two qubits, where a
// negative partial transpose is equivalent to entanglement; for larger
// dimensions a PPT-entangled state reports false.
bool is_entangled_ppt(const DensityMatrix& rho);

// ---- Pauli string indexing (N qubits, first qubit most significant) ----
//
// Axis strings are base-3 indices with digit values mapping to axes
// 1 -> sigma_z, 2 -> sigma_x, 3 -> sigma_y. Sign strings are bit strings
// where bit value 0 means outcome +1.

std::size_t num_axis_strings(int n_qubits);  // 3^N
std::size_t num_sign_strings(int n_qubits);  // 2^N
int axis_string_digit(std::size_t axis_string, int qubit, int n_qubits);  // 1..3
int sign_string_value(std::size_t sign_string, int qubit, int n_qubits);  // +1 / -1

// Tensor product over qubits of (I + c_q sigma_{z_q}) / 2.
Operator pauli_projector_string(std::size_t axis_string, std::size_t sign_string, int n_qubits);

// Tensor product of single-qubit Paulis; digits are base 4 with
// 0 -> identity and 1..3 as above.
Matrix pauli_string_matrix(std::size_t string_index, int n_qubits);

}  // namespace dicert
