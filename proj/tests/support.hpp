#pragma once

// Shared test helpers: independent oracles and seeded generators. The
// brute-force probability below deliberately avoids the steering reduction
// used by the library so the two routes stay independent.

#include "dicert/network.hpp"
#include "dicert/states.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <random>

namespace dicert::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    return (g + g.adjoint()) / 2.0;
}

inline Matrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ();
}

// Two-outcome POVM {E, I - E} with E = U diag(u) U^dagger, u uniform in [0,1].
inline Povm random_two_outcome_povm(const Dims& dims, std::mt19937_64& rng) {
    const auto n = total_dim(dims);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Matrix u = random_unitary(n, rng);
    Eigen::VectorXd diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = uni(rng);
    const Matrix e = u * diag.asDiagonal().toDenseMatrix().cast<Complex>() * u.adjoint();
    return Povm{{Operator{e, dims}, Operator{Matrix::Identity(n, n) - e, dims}}};
}

inline MeasurementFamily random_family(std::size_t settings, const Dims& dims,
                                       std::mt19937_64& rng) {
    std::vector<Povm> povms;
    for (std::size_t s = 0; s < settings; ++s) povms.push_back(random_two_outcome_povm(dims, rng));
    return MeasurementFamily{std::move(povms)};
}

// Fully random all-qubit network configuration (star indices nominal).
inline NetworkConfig random_config(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    DensityMatrix ca0 = random_density(Dims{2, 2}, rng());
    DensityMatrix ab = random_density(Dims{2, 2}, rng());
    DensityMatrix b0d = random_density(Dims{2, 2}, rng());
    MeasurementFamily charlie = random_family(3, Dims{2}, rng);
    MeasurementFamily alice = random_family(7, Dims{2, 2}, rng);
    MeasurementFamily bob = random_family(7, Dims{2, 2}, rng);
    MeasurementFamily daisy = random_family(3, Dims{2}, rng);
    return NetworkConfig{std::move(ca0), std::move(ab), std::move(b0d), std::move(charlie),
                         std::move(alice), std::move(bob),  std::move(daisy), 6, 6};
}

// Direct evaluation on the full 64-dimensional product space in the global
// order C, A0, A, B, B0, D.
inline double brute_force_probability(const NetworkConfig& cfg, const SettingIndex& s,
                                      const OutcomeIndex& o) {
    const Matrix state = Eigen::kroneckerProduct(
        cfg.rho_ca0.mat(), Eigen::kroneckerProduct(cfg.rho_ab.mat(), cfg.rho_b0d.mat()).eval())
                             .eval();
    const Matrix effect =
        Eigen::kroneckerProduct(
            cfg.charlie.effect(s.z, o.c).mat,
            Eigen::kroneckerProduct(
                cfg.alice.effect(s.x, o.a).mat,
                Eigen::kroneckerProduct(cfg.bob.effect(s.y, o.b).mat,
                                        cfg.daisy.effect(s.w, o.d).mat)
                    .eval())
                .eval())
            .eval();
    return (effect * state).trace().real();
}

// Seeded NPT two-qubit state: rejection-sample Hilbert-Schmidt states.
inline DensityMatrix random_npt_two_qubit(std::uint64_t seed) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        DensityMatrix rho = random_density(Dims{2, 2}, seed * 1009 + attempt);
        if (is_entangled_ppt(rho)) return rho;
    }
}

}  // namespace dicert::testing
