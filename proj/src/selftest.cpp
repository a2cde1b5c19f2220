#include "dicert/selftest.hpp"

#include <cmath>
#include <stdexcept>

namespace dicert {

namespace {

// Sign pattern of the functional: term (z, x) contributes sign * E_{z,x}.
// Line 0 pairs settings (1,2) with (z+-x)/sqrt(2), line 1 pairs (1,3) with
// (z+-y)/sqrt(2), line 2 pairs (2,3) with (x+-y)/sqrt(2).
struct Term {
    int line;
    std::size_t z, x;
    double sign;
};

constexpr std::array<Term, 12> kTerms{{
    {0, 0, 0, +1.0}, {0, 0, 1, +1.0}, {0, 1, 0, +1.0}, {0, 1, 1, -1.0},
    {1, 0, 2, +1.0}, {1, 0, 3, +1.0}, {1, 2, 2, -1.0}, {1, 2, 3, +1.0},
    {2, 1, 4, +1.0}, {2, 1, 5, +1.0}, {2, 2, 4, -1.0}, {2, 2, 5, +1.0},
}};

}  // namespace

WingMarginal wing_marginal(const ProbabilityTable& t, WingSide side) {
    const bool left = side == WingSide::left;
    const std::size_t trusted_settings = left ? t.num_settings[0] : t.num_settings[3];
    const std::size_t partner_settings = left ? t.num_settings[1] : t.num_settings[2];
    const std::size_t star = left ? t.alice_star : t.bob_star;
    const std::size_t other_trusted = left ? t.num_settings[3] : t.num_settings[0];
    const std::size_t other_partner = left ? t.num_settings[2] : t.num_settings[1];

    if (trusted_settings != 3 || partner_settings != 7 || star != 6 ||
        t.num_outcomes != std::array<std::size_t, 4>{2, 2, 2, 2}) {
        throw std::invalid_argument(
            "wing_marginal: table lacks the single-qubit-pair self-test layout");
    }

    // Marginal at every choice of the far wing's settings; the spread over
    // choices is the signaling deviation for this marginal.
    WingMarginal result{};
    double worst = 0.0;
    for (std::size_t z = 0; z < 3; ++z) {
        for (std::size_t x = 0; x < 6; ++x) {
            for (std::size_t c = 0; c < 2; ++c) {
                for (std::size_t a = 0; a < 2; ++a) {
                    double first = 0.0;
                    for (std::size_t fp = 0; fp < other_partner; ++fp) {
                        for (std::size_t ft = 0; ft < other_trusted; ++ft) {
                            double sum = 0.0;
                            for (std::size_t fo1 = 0; fo1 < 2; ++fo1) {
                                for (std::size_t fo2 = 0; fo2 < 2; ++fo2) {
                                    sum += left ? t.at(z, x, fp, ft, c, a, fo1, fo2)
                                                : t.at(ft, fp, x, z, fo1, fo2, a, c);
                                }
                            }
                            if (fp == 0 && ft == 0) {
                                first = sum;
                                result.values[((z * 6 + x) * 2 + c) * 2 + a] = sum;
                            } else {
                                worst = std::max(worst, std::abs(sum - first));
                            }
                        }
                    }
                }
            }
        }
    }
    if (worst > 1e-7) {
        throw std::logic_error("wing_marginal: signaling above 1e-7, probability engine broken");
    }
    return result;
}

double correlator(const WingMarginal& m, std::size_t z, std::size_t x) {
    double e = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
        for (std::size_t a = 0; a < 2; ++a) {
            e += static_cast<double>(outcome_sign(c) * outcome_sign(a)) * m.at(z, x, c, a);
        }
    }
    return e;
}

std::array<double, 3> chained_chsh_lines(const WingMarginal& m) {
    std::array<double, 3> lines{0.0, 0.0, 0.0};
    for (const auto& term : kTerms) {
        lines[static_cast<std::size_t>(term.line)] += term.sign * correlator(m, term.z, term.x);
    }
    return lines;
}

double chained_chsh(const WingMarginal& m) {
    const auto lines = chained_chsh_lines(m);
    return lines[0] + lines[1] + lines[2];
}

ClassicalBound classical_bound_bruteforce() {
    ClassicalBound best{-1e300, {}, {}};
    for (unsigned ct = 0; ct < 8; ++ct) {
        std::array<int, 3> cs{};
        for (int i = 0; i < 3; ++i) cs[static_cast<std::size_t>(i)] = (ct >> i) & 1 ? -1 : 1;
        for (unsigned at = 0; at < 64; ++at) {
            std::array<int, 6> as{};
            for (int i = 0; i < 6; ++i) as[static_cast<std::size_t>(i)] = (at >> i) & 1 ? -1 : 1;
            double j = 0.0;
            for (const auto& term : kTerms) {
                j += term.sign * cs[term.z] * as[term.x];
            }
            if (j > best.value) best = {j, cs, as};
        }
    }
    return best;
}

double classical_line_max_bruteforce(int line) {
    if (line < 0 || line > 2) throw std::invalid_argument("classical_line_max: line must be 0..2");
    double best = -1e300;
    for (unsigned ct = 0; ct < 8; ++ct) {
        for (unsigned at = 0; at < 64; ++at) {
            double j = 0.0;
            for (const auto& term : kTerms) {
                if (term.line != line) continue;
                const int c = (ct >> term.z) & 1 ? -1 : 1;
                const int a = (at >> term.x) & 1 ? -1 : 1;
                j += term.sign * c * a;
            }
            best = std::max(best, j);
        }
    }
    return best;
}

double SelfTestReport::deficit() const {
    return std::max({target - j_left, target - j_right, 0.0});
}

SelfTestReport selftest_check(const ProbabilityTable& table, double tolerance) {
    if (tolerance < 0.0) throw std::invalid_argument("selftest_check: negative tolerance");
    SelfTestReport report{};
    report.j_left = chained_chsh(wing_marginal(table, WingSide::left));
    report.j_right = chained_chsh(wing_marginal(table, WingSide::right));
    report.target = kChainedQuantumValue;
    report.tolerance = tolerance;
    report.passed = std::abs(report.j_left - report.target) <= tolerance &&
                    std::abs(report.j_right - report.target) <= tolerance;
    return report;
}

}  // namespace dicert
