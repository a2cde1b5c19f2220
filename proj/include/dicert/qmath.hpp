#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace dicert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Dims = std::vector<Eigen::Index>;

// Validation tolerances. Everything in scope is a dense double matrix of
// side <= 256, so these leave plenty of headroom.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPsdFloor = -1e-7;

Eigen::Index total_dim(const Dims& dims);

// Dense complex square matrix together with the ordered list of subsystem
// dimensions of the space it acts on. Subsystem order is always explicit
// and carried by the value; call sites never reinterpret it.
struct Operator {
    Matrix mat;
    Dims dims;

    Operator(Matrix m, Dims d);

    Eigen::Index dim() const { return mat.rows(); }
    std::size_t num_subsystems() const { return dims.size(); }
    Complex trace() const { return mat.trace(); }

    bool is_hermitian(double tol = kHermitianTol) const;
    Operator adjoint() const { return {mat.adjoint(), dims}; }
    // Entrywise complex conjugate (transpose in the computational basis
    // for Hermitian operators).
    Operator conjugate() const { return {mat.conjugate(), dims}; }
};

Operator identity_op(const Dims& dims);

// Normalized state vector with subsystem dimensions.
struct Ket {
    Vector amps;
    Dims dims;

    Ket(Vector a, Dims d);

    Eigen::Index dim() const { return amps.size(); }
    Operator projector() const;
};

// Kronecker product; dims concatenate, left factor is the slower index.
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(const Operator& a, const Operator& b, const Operator& c);
Ket tensor(const Ket& a, const Ket& b);

// Trace out every subsystem not listed in `keep`. The result's dims are the
// kept subsystems in their original order. `keep` must be nonempty, within
// range and free of duplicates. Keeping everything returns the input.
Operator partial_trace(const Operator& m, const std::vector<std::size_t>& keep);

// Transpose a single subsystem in the computational basis. Involutive;
// preserves Hermiticity of Hermitian inputs.
Operator partial_transpose(const Operator& m, std::size_t subsystem);

struct EigenSystem {
    Eigen::VectorXd values;    // ascending
    std::vector<Ket> vectors;  // orthonormal, vectors[i] belongs to values[i]
};

// Eigendecomposition of a Hermitian operator. Throws if the input fails the
// Hermiticity check.
EigenSystem hermitian_eig(const Operator& m);

// Smallest eigenvalue of a Hermitian matrix (no eigenvector computation).
double min_eigenvalue(const Matrix& hermitian);

}  // namespace dicert
