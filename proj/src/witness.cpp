#include "dicert/witness.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicert {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Base-4 digit of a Pauli string index, first qubit most significant.
int pauli_digit(std::size_t index, int qubit, int n_qubits) {
    return static_cast<int>(index / ipow(4, n_qubits - 1 - qubit) % 4);
}

// Per-qubit weight of pi_{c|z} in the expansion of sigma_j:
// sigma_0 = (1/3) sum_z sum_c pi_{c|z},  sigma_j = sum_c c * pi_{c|j}.
double projector_weight(int pauli, int axis, int sign) {
    if (pauli == 0) return 1.0 / 3.0;
    return (pauli == axis) ? static_cast<double>(sign) : 0.0;
}

int qubits_from_dims(const Dims& dims, const char* what) {
    if (dims.size() != 2 || dims[0] != dims[1]) {
        throw std::invalid_argument(std::string(what) + ": expected equal bipartite dimensions");
    }
    const auto d = dims[0];
    int n = 0;
    Eigen::Index p = 1;
    while (p < d) {
        p *= 2;
        ++n;
    }
    if (p != d) {
        throw std::invalid_argument(std::string(what) +
                                    ": local dimension is not a power of two, no Pauli-projector family");
    }
    return n;
}

}  // namespace

std::size_t PauliOmega::num_settings() const { return ipow(3, qubits_per_side); }
std::size_t PauliOmega::num_outcomes() const { return ipow(2, qubits_per_side); }

double PauliOmega::at(std::size_t z, std::size_t w, std::size_t c, std::size_t d) const {
    const auto o = num_outcomes();
    return values[((z * num_settings() + w) * o + c) * o + d];
}

double& PauliOmega::at(std::size_t z, std::size_t w, std::size_t c, std::size_t d) {
    const auto o = num_outcomes();
    return values[((z * num_settings() + w) * o + c) * o + d];
}

PauliOmega decompose_pauli(const Operator& w) {
    if (!w.is_hermitian()) throw std::invalid_argument("decompose_pauli: input not Hermitian");
    const int n = qubits_from_dims(w.dims, "decompose_pauli");
    const auto d = w.dims[0];
    const std::size_t n_strings = ipow(4, n);
    const std::size_t n_settings = ipow(3, n);
    const std::size_t n_outcomes = ipow(2, n);

    // Pauli-string coefficients t[j][k] = tr[W (sigma_j (x) sigma_k)] / d^2.
    std::vector<Matrix> strings;
    strings.reserve(n_strings);
    for (std::size_t j = 0; j < n_strings; ++j) strings.push_back(pauli_string_matrix(j, n));

    std::vector<double> t(n_strings * n_strings);
    for (std::size_t j = 0; j < n_strings; ++j) {
        for (std::size_t k = 0; k < n_strings; ++k) {
            const Matrix full = Eigen::kroneckerProduct(strings[j], strings[k]);
            t[j * n_strings + k] =
                (full.transpose().cwiseProduct(w.mat)).sum().real() / static_cast<double>(d * d);
        }
    }

    // Per-side transfer weights alpha[z][c][j] = prod_q u_{j_q}(c_q, z_q).
    std::vector<double> alpha(n_settings * n_outcomes * n_strings);
    for (std::size_t z = 0; z < n_settings; ++z) {
        for (std::size_t c = 0; c < n_outcomes; ++c) {
            for (std::size_t j = 0; j < n_strings; ++j) {
                double prod = 1.0;
                for (int q = 0; q < n; ++q) {
                    prod *= projector_weight(pauli_digit(j, q, n), axis_string_digit(z, q, n),
                                             sign_string_value(c, q, n));
                    if (prod == 0.0) break;
                }
                alpha[(z * n_outcomes + c) * n_strings + j] = prod;
            }
        }
    }

    PauliOmega omega;
    omega.qubits_per_side = n;
    omega.values.assign(n_settings * n_settings * n_outcomes * n_outcomes, 0.0);
    for (std::size_t z = 0; z < n_settings; ++z) {
        for (std::size_t c = 0; c < n_outcomes; ++c) {
            const double* a_row = &alpha[(z * n_outcomes + c) * n_strings];
            for (std::size_t w2 = 0; w2 < n_settings; ++w2) {
                for (std::size_t d2 = 0; d2 < n_outcomes; ++d2) {
                    const double* b_row = &alpha[(w2 * n_outcomes + d2) * n_strings];
                    double sum = 0.0;
                    for (std::size_t j = 0; j < n_strings; ++j) {
                        if (a_row[j] == 0.0) continue;
                        const double* t_row = &t[j * n_strings];
                        for (std::size_t k = 0; k < n_strings; ++k) {
                            sum += t_row[k] * a_row[j] * b_row[k];
                        }
                    }
                    omega.at(z, w2, c, d2) = sum;
                }
            }
        }
    }
    return omega;
}

Operator omega_reconstruct(const PauliOmega& omega) {
    const int n = omega.qubits_per_side;
    const auto d = static_cast<Eigen::Index>(ipow(2, n));
    Matrix m = Matrix::Zero(d * d, d * d);
    for (std::size_t z = 0; z < omega.num_settings(); ++z) {
        for (std::size_t c = 0; c < omega.num_outcomes(); ++c) {
            const Operator pa = pauli_projector_string(z, c, n);
            for (std::size_t w = 0; w < omega.num_settings(); ++w) {
                for (std::size_t dd = 0; dd < omega.num_outcomes(); ++dd) {
                    const double coeff = omega.at(z, w, c, dd);
                    if (coeff == 0.0) continue;
                    const Operator pb = pauli_projector_string(w, dd, n);
                    m += coeff * Eigen::kroneckerProduct(pa.mat, pb.mat);
                }
            }
        }
    }
    return {std::move(m), Dims{d, d}};
}

WitnessSpec::WitnessSpec(Operator witness) : w(std::move(witness)), omega(decompose_pauli(w)) {
    const Operator rebuilt = omega_reconstruct(omega);
    if ((rebuilt.mat - w.mat).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::logic_error("WitnessSpec: projector decomposition failed to reconstruct witness");
    }
}

WitnessSpec witness_from_state(const DensityMatrix& rho) {
    if (!is_entangled_ppt(rho)) {
        throw std::invalid_argument("witness_from_state: no PPT witness; supply witness explicitly");
    }
    const Operator pt = partial_transpose(rho.op, 1);
    const EigenSystem sys = hermitian_eig(pt);
    const Ket& eta = sys.vectors.front();  // most negative eigenvalue
    return WitnessSpec(partial_transpose(eta.projector(), 1));
}

namespace {

// <a| (x) I  W  |a> (x) I  as an operator on side B.
Matrix conditioned_on_a(const Matrix& w, const Vector& a, Eigen::Index da, Eigen::Index db) {
    Matrix m = Matrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index k = 0; k < da; ++k) {
            m += std::conj(a(i)) * a(k) * w.block(i * db, k * db, db, db);
        }
    }
    return m;
}

Matrix conditioned_on_b(const Matrix& w, const Vector& b, Eigen::Index da, Eigen::Index db) {
    Matrix m = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index k = 0; k < da; ++k) {
            m(i, k) = (b.adjoint() * w.block(i * db, k * db, db, db) * b)(0, 0);
        }
    }
    return m;
}

Vector min_eigvec(const Matrix& hermitian, double& value) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
    value = solver.eigenvalues()(0);
    return solver.eigenvectors().col(0);
}

}  // namespace

WitnessReport verify_witness(const WitnessSpec& ws, const DensityMatrix& rho,
                             int samples, std::uint64_t seed) {
    if (ws.w.dims != rho.dims()) {
        throw std::invalid_argument("verify_witness: witness and state dimensions differ");
    }
    const auto da = ws.w.dims[0];
    const auto db = ws.w.dims[1];
    const double target = (ws.w.mat.transpose().cwiseProduct(rho.mat())).sum().real();

    std::mt19937_64 rng(seed);
    const int starts = std::max(samples, 20);
    double best = std::numeric_limits<double>::infinity();

    for (int s = 0; s < starts; ++s) {
        Vector a = haar_random_ket(da, rng).amps;
        Vector b = haar_random_ket(db, rng).amps;
        double value = ((Eigen::kroneckerProduct(a, b).adjoint() * ws.w.mat *
                         Eigen::kroneckerProduct(a, b))(0, 0))
                           .real();
        // Alternate exact single-side minimizations until stationary.
        for (int iter = 0; iter < 500; ++iter) {
            double lb = 0.0;
            b = min_eigvec(conditioned_on_a(ws.w.mat, a, da, db), lb);
            double la = 0.0;
            a = min_eigvec(conditioned_on_b(ws.w.mat, b, da, db), la);
            if (value - la < 1e-10) {
                value = la;
                break;
            }
            value = la;
        }
        best = std::min(best, value);
    }
    return {best, target};
}

}  // namespace dicert
