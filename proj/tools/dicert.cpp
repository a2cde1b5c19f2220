// Command-line front end: load states and witnesses, run the certification
// pipeline, the self-test, noise sweeps and separable baselines.
//
// Exit codes are the machine contract: 0 entangled (or command success),
// 1 not detected (or baseline failure), 2 self-test failed, 3 input error.
// Human-readable notes go to stderr; reports go to --out (stdout by default).

#include "dicert/certify.hpp"
#include "dicert/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using dicert::io::json;

constexpr int kExitEntangled = 0;
constexpr int kExitNotDetected = 1;
constexpr int kExitSelftestFailed = 2;
constexpr int kExitInputError = 3;

// Number of product terms in each sampled separable baseline state.
constexpr int kBaselineTerms = 3;

struct Options {
    std::string state_path;
    std::string witness_path;
    std::string out_path = "-";
    std::string format = "json";
    double visibility = 1.0;
    double tolerance = 1e-6;
    std::vector<double> grid;
    int samples = 1000;
    std::uint64_t seed = 7;
};

std::optional<dicert::WitnessSpec> load_optional_witness(const Options& opt) {
    if (opt.witness_path.empty()) return std::nullopt;
    return dicert::io::load_witness(opt.witness_path);
}

int cmd_certify(const Options& opt) {
    const dicert::DensityMatrix rho = dicert::io::load_state(opt.state_path);
    const auto witness = load_optional_witness(opt);
    const dicert::CertificationReport report =
        dicert::run_pipeline(rho, opt.visibility, opt.tolerance, witness);

    json j = dicert::io::certification_to_json(report);
    j["visibility"] = opt.visibility;
    const dicert::WitnessSpec ws =
        witness ? *witness : dicert::witness_from_state(rho);
    j["omega"] = dicert::io::omega_to_json(ws.omega);
    dicert::io::write_text(opt.out_path, j.dump(2) + "\n");

    std::cerr << "verdict: " << dicert::to_string(report.verdict) << "\n";
    switch (report.verdict) {
        case dicert::Verdict::entangled: return kExitEntangled;
        case dicert::Verdict::not_detected: return kExitNotDetected;
        case dicert::Verdict::selftest_failed: return kExitSelftestFailed;
    }
    return kExitInputError;
}

int cmd_selftest(const Options& opt) {
    const dicert::DensityMatrix rho = opt.state_path.empty()
                                          ? dicert::isotropic(1.0)
                                          : dicert::io::load_state(opt.state_path);
    const auto table = dicert::probability_table(dicert::canonical_config(rho, opt.visibility));
    const dicert::SelfTestReport report = dicert::selftest_check(table, opt.tolerance);

    json j = dicert::io::selftest_to_json(report);
    j["visibility"] = opt.visibility;
    j["config_digest"] = table.config_digest;
    dicert::io::write_text(opt.out_path, j.dump(2) + "\n");

    std::cerr << "self-test " << (report.passed ? "passed" : "failed")
              << " (J_left = " << report.j_left << ", J_right = " << report.j_right << ")\n";
    return report.passed ? kExitEntangled : kExitSelftestFailed;
}

int cmd_sweep(const Options& opt) {
    const dicert::DensityMatrix rho = dicert::io::load_state(opt.state_path);
    const auto witness = load_optional_witness(opt);
    const auto records = dicert::noise_sweep(rho, opt.grid, witness);

    if (opt.format == "csv") {
        dicert::io::write_text(opt.out_path, dicert::io::sweep_to_csv(records));
    } else {
        dicert::io::write_text(opt.out_path, dicert::io::sweep_to_json(records).dump(2) + "\n");
    }
    std::cerr << "sweep: " << records.size() << " visibilities\n";
    return kExitEntangled;
}

int cmd_baseline(const Options& opt) {
    const auto witness = load_optional_witness(opt);
    const double normal =
        dicert::separable_baseline(opt.samples, kBaselineTerms, opt.seed, false, witness);
    const double adversarial =
        dicert::separable_baseline(opt.samples, kBaselineTerms, opt.seed, true, witness);
    const bool sound =
        normal >= dicert::kDetectionThreshold && adversarial >= dicert::kDetectionThreshold;

    json j{{"samples", opt.samples},
           {"num_terms", kBaselineTerms},
           {"seed", opt.seed},
           {"min_I_normal", normal},
           {"min_I_adversarial", adversarial},
           {"threshold", dicert::kDetectionThreshold},
           {"sound", sound}};
    dicert::io::write_text(opt.out_path, j.dump(2) + "\n");

    std::cerr << "baseline min I: normal = " << normal << ", adversarial = " << adversarial
              << "\n";
    return sound ? kExitEntangled : kExitNotDetected;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Network-based entanglement certification: self-tested auxiliary Bell pairs "
                 "turn an entanglement witness into a device-independent correlation test."};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool state_required) {
        auto* state = cmd->add_option("--state", opt.state_path, "state file (JSON)");
        if (state_required) state->required();
        cmd->add_option("--witness", opt.witness_path, "witness file (JSON)");
        cmd->add_option("--visibility", opt.visibility, "auxiliary-state visibility in [0,1]")
            ->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--tolerance", opt.tolerance, "self-test pass tolerance");
        cmd->add_option("--out", opt.out_path, "output path ('-' for stdout)");
        cmd->add_option("--format", opt.format, "output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--samples", opt.samples, "number of sampled states")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opt.seed, "sampling seed");
        cmd->add_option("--grid", opt.grid, "comma-separated visibility grid")->delimiter(',');
    };

    auto* certify = app.add_subcommand("certify", "run the full certification pipeline");
    add_common(certify, true);
    auto* selftest = app.add_subcommand("selftest", "evaluate the chained CHSH self-test");
    add_common(selftest, false);
    auto* sweep = app.add_subcommand("sweep", "J and I across a visibility grid");
    add_common(sweep, true);
    auto* baseline = app.add_subcommand("baseline", "separable no-false-positive baselines");
    add_common(baseline, false);
    sweep->get_option("--format")->default_str("csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (certify->parsed()) return cmd_certify(opt);
        if (selftest->parsed()) return cmd_selftest(opt);
        if (sweep->parsed()) {
            if (opt.format == "json" && sweep->get_option("--format")->empty()) opt.format = "csv";
            return cmd_sweep(opt);
        }
        if (baseline->parsed()) return cmd_baseline(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
