#include "dicert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicert {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::entangled: return "entangled";
        case Verdict::not_detected: return "not_detected";
        case Verdict::selftest_failed: return "selftest_failed";
    }
    return "unknown";
}

double certification_functional(const ProbabilityTable& table, const PauliOmega& omega) {
    const std::size_t settings = omega.num_settings();
    const std::size_t outcomes = omega.num_outcomes();
    if (table.num_settings[0] != settings || table.num_settings[3] != settings ||
        table.num_outcomes[0] != outcomes || table.num_outcomes[3] != outcomes) {
        throw std::invalid_argument(
            "certification_functional: omega index ranges do not match the table");
    }
    double i = 0.0;
    for (std::size_t z = 0; z < settings; ++z) {
        for (std::size_t w = 0; w < settings; ++w) {
            for (std::size_t c = 0; c < outcomes; ++c) {
                for (std::size_t d = 0; d < outcomes; ++d) {
                    i += omega.at(z, w, c, d) *
                         table.at(z, table.alice_star, table.bob_star, w, c, 0, 0, d);
                }
            }
        }
    }
    return i;
}

const WitnessSpec& reference_witness() {
    static const WitnessSpec ws = witness_from_state(isotropic(0.8));
    return ws;
}

namespace {

WitnessSpec resolve_witness(const DensityMatrix& rho_ab,
                            const std::optional<WitnessSpec>& witness) {
    if (witness) {
        if (witness->w.dims != rho_ab.dims()) {
            throw std::invalid_argument("witness dimensions do not match the state");
        }
        return *witness;
    }
    return witness_from_state(rho_ab);
}

// Pipeline body shared by the canonical run and the adversarial variants.
CertificationReport evaluate_config(const NetworkConfig& cfg, const WitnessSpec& ws,
                                    double selftest_tolerance) {
    const ProbabilityTable table = probability_table(cfg);
    CertificationReport report{};
    report.config_digest = table.config_digest;
    report.witness_trace =
        (ws.w.mat.transpose().cwiseProduct(cfg.rho_ab.mat())).sum().real();
    report.selftest = selftest_check(table, selftest_tolerance);
    if (!report.selftest.passed) {
        report.verdict = Verdict::selftest_failed;
        return report;
    }
    const double i = certification_functional(table, ws.omega);
    report.i_value = i;
    report.verdict = i < kDetectionThreshold ? Verdict::entangled : Verdict::not_detected;
    return report;
}

}  // namespace

CertificationReport run_pipeline(const DensityMatrix& rho_ab, double visibility_aux,
                                 double selftest_tolerance,
                                 const std::optional<WitnessSpec>& witness) {
    if (rho_ab.dims() != Dims{2, 2}) {
        throw std::invalid_argument(
            "run_pipeline: requires a two-qubit state; the self-test is defined for single "
            "qubit pairs (use certification_functional directly for larger dimensions)");
    }
    const WitnessSpec ws = resolve_witness(rho_ab, witness);
    return evaluate_config(canonical_config(rho_ab, visibility_aux), ws, selftest_tolerance);
}

double separable_baseline(int num_states, int num_terms, std::uint64_t seed, bool adversarial,
                          const std::optional<WitnessSpec>& witness) {
    if (num_states < 1) throw std::invalid_argument("separable_baseline: num_states must be >= 1");
    if (num_terms < 1) throw std::invalid_argument("separable_baseline: num_terms must be >= 1");
    const WitnessSpec& ws = witness ? *witness : reference_witness();

    double min_i = std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_states; ++k) {
        const std::uint64_t state_seed = seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(k);
        const DensityMatrix rho = random_separable(num_terms, state_seed);
        const NetworkConfig base = canonical_config(rho, 1.0);

        std::vector<NetworkConfig> variants;
        variants.push_back(base);
        if (adversarial) {
            variants.push_back(conjugate_config(base, Wing::charlie));
            variants.push_back(conjugate_config(base, Wing::daisy));
            variants.push_back(conjugate_config(conjugate_config(base, Wing::charlie), Wing::daisy));
        }
        for (const auto& cfg : variants) {
            const CertificationReport r = evaluate_config(cfg, ws, 1e-6);
            if (r.i_value) min_i = std::min(min_i, *r.i_value);
        }
    }
    return min_i;
}

std::vector<SweepRecord> noise_sweep(const DensityMatrix& rho_ab, std::vector<double> grid,
                                     const std::optional<WitnessSpec>& witness) {
    if (grid.empty()) throw std::invalid_argument("noise_sweep: empty visibility grid");
    for (const double v : grid) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("noise_sweep: grid value outside [0, 1]");
        }
    }
    const WitnessSpec ws = resolve_witness(rho_ab, witness);

    std::sort(grid.begin(), grid.end());
    std::vector<SweepRecord> records;
    records.reserve(grid.size());
    for (const double v : grid) {
        const ProbabilityTable table = probability_table(canonical_config(rho_ab, v));
        const double j_left = chained_chsh(wing_marginal(table, WingSide::left));
        const double j_right = chained_chsh(wing_marginal(table, WingSide::right));
        const double i = certification_functional(table, ws.omega);
        records.push_back({v, std::min(j_left, j_right), i, i < kDetectionThreshold});
    }
    return records;
}

std::optional<double> detection_threshold_visibility(const DensityMatrix& rho_ab,
                                                     const std::optional<WitnessSpec>& witness,
                                                     double resolution) {
    const WitnessSpec ws = resolve_witness(rho_ab, witness);
    auto detected = [&](double v) {
        const ProbabilityTable table = probability_table(canonical_config(rho_ab, v));
        return certification_functional(table, ws.omega) < kDetectionThreshold;
    };
    if (!detected(1.0)) return std::nullopt;
    double lo = 0.0;
    double hi = 1.0;
    if (detected(lo)) return lo;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (detected(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace dicert
