#include "dicert/states.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicert {

namespace {
const Complex kI(0.0, 1.0);
}

DensityMatrix::DensityMatrix(Operator o) : op(std::move(o)) {
    if (!op.is_hermitian()) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(op.trace().real() - 1.0) > kTraceTol || std::abs(op.trace().imag()) > kTraceTol) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    }
    if (min_eigenvalue(op.mat) < kPsdFloor) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue below PSD floor");
    }
}

PauliAxis pauli_axis(int index) {
    switch (index) {
        case 1: return PauliAxis::z;
        case 2: return PauliAxis::x;
        case 3: return PauliAxis::y;
        default: throw std::invalid_argument("pauli_axis: index must be 1, 2 or 3");
    }
}

Matrix pauli_matrix(PauliAxis axis) {
    Matrix m(2, 2);
    switch (axis) {
        case PauliAxis::z:
            m << 1.0, 0.0, 0.0, -1.0;
            break;
        case PauliAxis::x:
            m << 0.0, 1.0, 1.0, 0.0;
            break;
        case PauliAxis::y:
            m << 0.0, -kI, kI, 0.0;
            break;
    }
    return m;
}

Matrix pauli_matrix(int index) {
    if (index == 0) return Matrix::Identity(2, 2);
    return pauli_matrix(pauli_axis(index));
}

PauliProjector::PauliProjector(int outcome_in, PauliAxis axis_in)
    : outcome(outcome_in),
      axis(axis_in),
      op((Matrix::Identity(2, 2) + static_cast<double>(outcome_in) * pauli_matrix(axis_in)) / 2.0,
         Dims{2}) {
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("PauliProjector: outcome must be +1 or -1");
    }
}

DensityMatrix isotropic(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("isotropic: p outside [0, 1]");
    const Operator phi = bell_phi_plus(2).projector();
    Matrix m = p * phi.mat + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
    return {std::move(m), Dims{2, 2}};
}

Ket bell_phi_plus(Eigen::Index d) {
    if (d < 2) throw std::invalid_argument("bell_phi_plus: dimension must be >= 2");
    Vector v = Vector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = amp;
    return {std::move(v), Dims{d, d}};
}

Ket pauli_eigenstate(std::string_view label) {
    Vector v(2);
    const double s = 1.0 / std::sqrt(2.0);
    if (label == "0") {
        v << 1.0, 0.0;
    } else if (label == "1") {
        v << 0.0, 1.0;
    } else if (label == "+") {
        v << s, s;
    } else if (label == "-") {
        v << s, -s;
    } else if (label == "R") {
        v << s, kI * s;
    } else if (label == "L") {
        v << s, -kI * s;
    } else {
        throw std::invalid_argument("pauli_eigenstate: unknown label '" + std::string(label) + "'");
    }
    return {std::move(v), Dims{2}};
}

Ket haar_random_ket(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = Complex(re, im);
    }
    v.normalize();
    return {std::move(v), Dims{d}};
}

DensityMatrix random_separable(int num_terms, std::uint64_t seed,
                               Eigen::Index dim_a, Eigen::Index dim_b) {
    if (num_terms < 1) throw std::invalid_argument("random_separable: num_terms must be >= 1");
    std::mt19937_64 rng(seed);

    // Dirichlet(1) weights: normalized unit exponentials.
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<std::size_t>(num_terms));
    double total = 0.0;
    for (auto& wk : w) {
        wk = expo(rng);
        total += wk;
    }

    Matrix m = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
    for (const auto wk : w) {
        const Ket a = haar_random_ket(dim_a, rng);
        const Ket b = haar_random_ket(dim_b, rng);
        const Ket ab = tensor(a, b);
        m += (wk / total) * (ab.amps * ab.amps.adjoint());
    }
    return {std::move(m), Dims{dim_a, dim_b}};
}

DensityMatrix random_density(const Dims& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = total_dim(dims);
    Matrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(r, c) = Complex(re, im);
        }
    }
    Matrix m = g * g.adjoint();
    m /= m.trace();
    return {std::move(m), dims};
}

bool is_entangled_ppt(const DensityMatrix& rho) {
    if (rho.dims().size() != 2) {
        throw std::invalid_argument("is_entangled_ppt: state is not bipartite");
    }
    const Operator pt = partial_transpose(rho.op, 1);
    return min_eigenvalue(pt.mat) < -1e-9;
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

int digit_of(std::size_t index, int qubit, int n_qubits, std::size_t base) {
    return static_cast<int>(index / ipow(base, n_qubits - 1 - qubit) % base);
}

}  // namespace

std::size_t num_axis_strings(int n_qubits) { return ipow(3, n_qubits); }
std::size_t num_sign_strings(int n_qubits) { return ipow(2, n_qubits); }

int axis_string_digit(std::size_t axis_string, int qubit, int n_qubits) {
    return digit_of(axis_string, qubit, n_qubits, 3) + 1;
}

int sign_string_value(std::size_t sign_string, int qubit, int n_qubits) {
    return digit_of(sign_string, qubit, n_qubits, 2) == 0 ? +1 : -1;
}

Operator pauli_projector_string(std::size_t axis_string, std::size_t sign_string, int n_qubits) {
    auto factor = [&](int q) {
        const int axis = axis_string_digit(axis_string, q, n_qubits);
        const double sign = sign_string_value(sign_string, q, n_qubits);
        return Operator((Matrix::Identity(2, 2) + sign * pauli_matrix(axis)) / 2.0, Dims{2});
    };
    Operator p = factor(0);
    for (int q = 1; q < n_qubits; ++q) p = tensor(p, factor(q));
    return p;
}

Matrix pauli_string_matrix(std::size_t string_index, int n_qubits) {
    Matrix m = pauli_matrix(digit_of(string_index, 0, n_qubits, 4));
    for (int q = 1; q < n_qubits; ++q) {
        m = Eigen::kroneckerProduct(m, pauli_matrix(digit_of(string_index, q, n_qubits, 4))).eval();
    }
    return m;
}

}  // namespace dicert
