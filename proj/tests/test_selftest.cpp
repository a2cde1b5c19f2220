#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dicert/selftest.hpp"
#include "support.hpp"

#include <cmath>

using namespace dicert;

namespace {

ProbabilityTable ideal_table() {
    return probability_table(canonical_config(isotropic(1.0), 1.0));
}

}  // namespace

TEST_CASE("ideal wing marginals and correlators") {
    const ProbabilityTable table = ideal_table();
    const WingMarginal left = wing_marginal(table, WingSide::left);
    const WingMarginal right = wing_marginal(table, WingSide::right);

    // <Z (x) (Z+X)/sqrt(2)> on |Phi+> = 1/sqrt(2)
    CHECK(std::abs(correlator(left, 0, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(correlator(right, 0, 0) - 1.0 / std::sqrt(2.0)) < 1e-12);

    for (std::size_t z = 0; z < 3; ++z) {
        for (std::size_t x = 0; x < 6; ++x) {
            double norm_l = 0.0;
            double norm_r = 0.0;
            for (std::size_t c = 0; c < 2; ++c) {
                for (std::size_t a = 0; a < 2; ++a) {
                    norm_l += left.at(z, x, c, a);
                    norm_r += right.at(z, x, c, a);
                }
            }
            CHECK(std::abs(norm_l - 1.0) < 1e-12);
            CHECK(std::abs(norm_r - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("marginal is independent of the far wing's setting choice") {
    // wing_marginal validates this internally; exercise it across tables
    // with correlated and uncorrelated targets
    CHECK_NOTHROW(wing_marginal(ideal_table(), WingSide::left));
    const ProbabilityTable noisy = probability_table(canonical_config(isotropic(0.4), 0.7));
    CHECK_NOTHROW(wing_marginal(noisy, WingSide::right));
}

TEST_CASE("uncorrelated auxiliaries give vanishing correlators") {
    const ProbabilityTable table = probability_table(canonical_config(isotropic(0.8), 0.0));
    const WingMarginal left = wing_marginal(table, WingSide::left);
    for (std::size_t z = 0; z < 3; ++z) {
        for (std::size_t x = 0; x < 6; ++x) {
            CHECK(std::abs(correlator(left, z, x)) < 1e-12);
        }
    }
    CHECK(std::abs(chained_chsh(left)) < 1e-12);
}

TEST_CASE("ideal configuration reaches the quantum value on both wings") {
    const ProbabilityTable table = ideal_table();
    const double j_left = chained_chsh(wing_marginal(table, WingSide::left));
    const double j_right = chained_chsh(wing_marginal(table, WingSide::right));
    CHECK(std::abs(j_left - kChainedQuantumValue) < 1e-9);
    CHECK(std::abs(j_right - kChainedQuantumValue) < 1e-9);

    const auto lines = chained_chsh_lines(wing_marginal(table, WingSide::left));
    for (const double line : lines) {
        CHECK(std::abs(line - 2.0 * std::numbers::sqrt2) < 1e-9);
    }
}

TEST_CASE("J scales linearly with auxiliary visibility") {
    for (double v : {0.9, 0.5, 0.25}) {
        const ProbabilityTable table = probability_table(canonical_config(isotropic(1.0), v));
        const double j = chained_chsh(wing_marginal(table, WingSide::left));
        CHECK(std::abs(j - kChainedQuantumValue * v) < 1e-9);
    }
    // the value quoted for v = 0.9
    const ProbabilityTable t9 = probability_table(canonical_config(isotropic(1.0), 0.9));
    CHECK(std::abs(chained_chsh(wing_marginal(t9, WingSide::left)) - 7.636753236814713) < 1e-9);
}

TEST_CASE("J is nondecreasing in visibility on a 101-point grid") {
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
        const double v = static_cast<double>(k) / 100.0;
        const ProbabilityTable table = probability_table(canonical_config(isotropic(1.0), v));
        const double j = chained_chsh(wing_marginal(table, WingSide::left));
        CHECK(j >= prev - 1e-12);
        prev = j;
    }
}

TEST_CASE("classical bound is exactly 6 and is attained") {
    const ClassicalBound bound = classical_bound_bruteforce();
    CHECK(bound.value == 6.0);

    // re-evaluate the functional at the reported maximizer
    double j = 0.0;
    const auto& cs = bound.trusted_assignment;
    const auto& as = bound.partner_assignment;
    const double signs[3][6] = {{1, 1, 1, 1, 0, 0}, {1, -1, 0, 0, 1, 1}, {0, 0, -1, 1, -1, 1}};
    for (int z = 0; z < 3; ++z) {
        for (int x = 0; x < 6; ++x) {
            j += signs[z][x] * cs[static_cast<std::size_t>(z)] * as[static_cast<std::size_t>(x)];
        }
    }
    CHECK(j == 6.0);

    for (int line = 0; line < 3; ++line) {
        CHECK(classical_line_max_bruteforce(line) == 2.0);
    }
    CHECK_THROWS_AS(classical_line_max_bruteforce(3), std::invalid_argument);
}

TEST_CASE("quantum-classical gap") {
    const double j = chained_chsh(wing_marginal(ideal_table(), WingSide::left));
    CHECK(std::abs(j - kChainedQuantumValue) < 1e-9);
    CHECK(std::abs(classical_bound_bruteforce().value - kChainedClassicalBound) == 0.0);
    CHECK(j > kChainedClassicalBound + 2.0);
}

TEST_CASE("selftest_check pass and fail modes") {
    CHECK(selftest_check(ideal_table(), 1e-9).passed);

    const ProbabilityTable t99 = probability_table(canonical_config(isotropic(1.0), 0.99));
    const SelfTestReport strict = selftest_check(t99, 1e-9);
    CHECK_FALSE(strict.passed);
    CHECK(std::abs(strict.deficit() - kChainedQuantumValue * 0.01) < 1e-9);

    const ProbabilityTable t999 = probability_table(canonical_config(isotropic(1.0), 0.999));
    const SelfTestReport robust = selftest_check(t999, 0.1);
    CHECK(robust.passed);
    CHECK(robust.deficit() < 0.1);
    CHECK(std::abs(robust.deficit() - 0.008485281374238) < 1e-9);

    CHECK_THROWS_AS(selftest_check(ideal_table(), -1.0), std::invalid_argument);
}

TEST_CASE("J is invariant under wing conjugation") {
    // exact invariance: the conjugated wing produces the complex-conjugate
    // marginal, and probabilities are real
    const auto variants = {isotropic(1.0), isotropic(0.6), random_density(Dims{2, 2}, 404)};
    for (const DensityMatrix& rho : variants) {
        const NetworkConfig base = canonical_config(rho, 0.95);
        const double j0 = chained_chsh(wing_marginal(probability_table(base), WingSide::left));
        for (Wing wing : {Wing::charlie, Wing::daisy}) {
            const ProbabilityTable conj = probability_table(conjugate_config(base, wing));
            const double j_left = chained_chsh(wing_marginal(conj, WingSide::left));
            CHECK(std::abs(j_left - j0) < 1e-12);
            const SelfTestReport r0 = selftest_check(probability_table(base), 1e-6);
            const SelfTestReport rc = selftest_check(conj, 1e-6);
            CHECK(std::abs(r0.j_right - rc.j_right) < 1e-12);
        }
    }
}

TEST_CASE("conjugated ideal strategy attains the quantum value") {
    const NetworkConfig base = canonical_config(isotropic(1.0), 1.0);
    for (Wing wing : {Wing::charlie, Wing::daisy}) {
        const SelfTestReport report =
            selftest_check(probability_table(conjugate_config(base, wing)), 1e-9);
        CHECK(report.passed);
    }
    const SelfTestReport both = selftest_check(
        probability_table(conjugate_config(conjugate_config(base, Wing::charlie), Wing::daisy)),
        1e-9);
    CHECK(both.passed);
}

TEST_CASE("wing marginal rejects tables without the self-test layout") {
    const double p = 0.6;
    const Operator phi4 = bell_phi_plus(4).projector();
    const DensityMatrix rho{p * phi4.mat + (1.0 - p) * Matrix::Identity(16, 16) / 16.0,
                            Dims{4, 4}};
    const ProbabilityTable table = probability_table(canonical_config(rho, 1.0));
    CHECK_THROWS_AS(wing_marginal(table, WingSide::left), std::invalid_argument);
}
