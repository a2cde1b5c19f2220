#pragma once

#include "dicert/network.hpp"

#include <array>
#include <numbers>
#include <vector>

namespace dicert {

// Classical (local deterministic) bound and quantum value of the chained
// triple-CHSH functional.
inline constexpr double kChainedClassicalBound = 6.0;
inline const double kChainedQuantumValue = 6.0 * std::numbers::sqrt2;

// Two-party marginal of one wing of the network: the trusted party's three
// Pauli settings against the partner's six rotated settings (the star
// setting is excluded). Outcome order is trusted party first.
struct WingMarginal {
    // values[z][x][c][a], z in [0,3), x in [0,6), c,a in [0,2)
    std::array<double, 3 * 6 * 2 * 2> values;

    double at(std::size_t z, std::size_t x, std::size_t c, std::size_t a) const {
        return values[((z * 6 + x) * 2 + c) * 2 + a];
    }
};

enum class WingSide { left, right };  // left: Charlie-Alice, right: Daisy-Bob

// Marginalizes the full table onto one wing at a fixed choice of the other
// parties' settings, after validating that the choice does not matter.
// Throws if the other wing's settings shift the marginal by more than 1e-7
// (a broken engine) or if the table does not carry the 3 + 6-plus-star
// setting layout of the self-test.
WingMarginal wing_marginal(const ProbabilityTable& table, WingSide side);

// Correlators E_{z,x} = sum_{c,a} c a p(c,a|z,x).
double correlator(const WingMarginal& m, std::size_t z, std::size_t x);

// The chained triple-CHSH functional: three CHSH lines, classical bound 6,
// quantum value 6 sqrt(2).
double chained_chsh(const WingMarginal& m);
std::array<double, 3> chained_chsh_lines(const WingMarginal& m);

struct ClassicalBound {
    double value;
    std::array<int, 3> trusted_assignment;  // deterministic +-1 outcomes per setting
    std::array<int, 6> partner_assignment;
};

// Exact maximum of the functional over all 2^3 * 2^6 deterministic local
// assignments, together with a maximizing assignment.
ClassicalBound classical_bound_bruteforce();

// Maximum of a single CHSH line (0, 1 or 2) over deterministic strategies.
double classical_line_max_bruteforce(int line);

struct SelfTestReport {
    double j_left;
    double j_right;
    double target;  // 6 sqrt(2)
    double tolerance;
    bool passed;

    // Worst distance from the target over both wings; a proxy for the
    // closeness parameter of the robust self-testing statement.
    double deficit() const;
};

// Evaluates both wings' functionals; passes iff both are within `tolerance`
// of 6 sqrt(2).
SelfTestReport selftest_check(const ProbabilityTable& table, double tolerance);

}  // namespace dicert
