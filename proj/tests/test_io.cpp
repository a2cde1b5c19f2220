#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dicert/certify.hpp"
#include "dicert/io.hpp"
#include "support.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace dicert;
using dicert::testing::max_abs_diff;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("dicert_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("state files round-trip") {
    TempDir tmp;
    const DensityMatrix rho = random_density(Dims{2, 2}, 8);
    io::save_operator(tmp.file("state.json"), rho.op);
    const DensityMatrix loaded = io::load_state(tmp.file("state.json"));
    CHECK(loaded.dims() == rho.dims());
    CHECK(max_abs_diff(loaded.mat(), rho.mat()) < 1e-15);
}

TEST_CASE("witness files round-trip through WitnessSpec") {
    TempDir tmp;
    const WitnessSpec ws = witness_from_state(isotropic(0.8));
    io::save_operator(tmp.file("witness.json"), ws.w);
    const WitnessSpec loaded = io::load_witness(tmp.file("witness.json"));
    CHECK(max_abs_diff(loaded.w.mat, ws.w.mat) < 1e-15);
    CHECK(loaded.omega.values == ws.omega.values);
}

TEST_CASE("loader rejects malformed input") {
    TempDir tmp;

    std::ofstream(tmp.file("truncated.json")) << "{ \"dims\": [2, 2], \"matrix\": [[";
    CHECK_THROWS_AS(io::load_state(tmp.file("truncated.json")), std::invalid_argument);

    std::ofstream(tmp.file("missing.json")) << "{ \"dims\": [2, 2] }";
    CHECK_THROWS_AS(io::load_state(tmp.file("missing.json")), std::invalid_argument);

    CHECK_THROWS_AS(io::load_state(tmp.file("nonexistent.json")), std::runtime_error);

    // valid JSON, invalid state (not PSD)
    Matrix bad = Matrix::Identity(4, 4) / 2.0;
    bad(3, 3) = -0.5;
    io::save_operator(tmp.file("bad_state.json"), Operator{bad, Dims{2, 2}});
    CHECK_THROWS_AS(io::load_state(tmp.file("bad_state.json")), std::invalid_argument);

    // non-Hermitian witness
    Matrix nh = Matrix::Zero(4, 4);
    nh(0, 1) = 1.0;
    io::save_operator(tmp.file("bad_witness.json"), Operator{nh, Dims{2, 2}});
    CHECK_THROWS_AS(io::load_witness(tmp.file("bad_witness.json")), std::invalid_argument);

    // wrong subsystem count
    std::ofstream(tmp.file("dims.json"))
        << "{ \"dims\": [2], \"matrix\": [[[1,0],[0,0]],[[0,0],[1,0]]] }";
    CHECK_THROWS_AS(io::load_state(tmp.file("dims.json")), std::invalid_argument);
}

TEST_CASE("operator json encodes complex entries as [re, im] pairs") {
    const Operator op = witness_from_state(isotropic(0.8)).w;
    const auto j = io::operator_to_json(op);
    CHECK(j.at("dims") == io::json::array({2, 2}));
    CHECK(j.at("matrix").size() == 4);
    CHECK(j.at("matrix").at(0).at(0).size() == 2);
    const Operator back = io::operator_from_json(j);
    CHECK(max_abs_diff(back.mat, op.mat) == 0.0);
}

TEST_CASE("sweep CSV has the expected header and rows") {
    const auto records = noise_sweep(isotropic(1.0), {0.0, 0.5, 1.0});
    const std::string csv = io::sweep_to_csv(records);
    CHECK(csv.rfind("v,J,I,detected\n", 0) == 0);
    CHECK(csv.find("0.5,4.24264068712") != std::string::npos);
    CHECK(csv.find("1,8.48528137424") != std::string::npos);
    // three data rows exactly
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    // deterministic serialization
    CHECK(csv == io::sweep_to_csv(noise_sweep(isotropic(1.0), {0.0, 0.5, 1.0})));
}

TEST_CASE("report json carries verdict, selftest and provenance") {
    const CertificationReport report = run_pipeline(isotropic(0.8), 1.0, 1e-6);
    const auto j = io::certification_to_json(report);
    CHECK(j.at("verdict") == "entangled");
    CHECK(j.at("selftest").at("passed") == true);
    CHECK(std::abs(j.at("I").get<double>() - (-0.021875)) < 1e-9);
    CHECK(j.at("config_digest").get<std::string>().size() == 16);

    const CertificationReport failed = run_pipeline(isotropic(0.8), 0.9, 1e-6);
    const auto jf = io::certification_to_json(failed);
    CHECK(jf.at("verdict") == "selftest_failed");
    CHECK(jf.at("I").is_null());
}

TEST_CASE("table export carries provenance and matches known entries") {
    const DensityMatrix phi{bell_phi_plus(2).projector().mat, Dims{2, 2}};
    const ProbabilityTable table = probability_table(canonical_config(phi, 1.0));

    const auto j = io::table_to_json(table);
    CHECK(j.at("config_digest") == table.config_digest);
    CHECK(j.at("rows").size() == 3 * 7 * 7 * 3 * 16);
    // row layout: z,x,y,w,c,a,b,d,p
    const auto& first = j.at("rows").at(0);
    CHECK(first.at(0) == 1);
    CHECK(first.at(4) == 1);

    const std::string csv = io::table_to_csv(table);
    CHECK(csv.rfind("# config_digest=" + table.config_digest, 0) == 0);
    CHECK(csv.find("z,x,y,w,c,a,b,d,p\n") != std::string::npos);
    // p(+,+,+,+|1,*,*,1) = 1/32 = 0.03125: star is setting 7
    CHECK(csv.find("1,7,7,1,1,1,1,1,0.03125\n") != std::string::npos);
    CHECK(csv == io::table_to_csv(table));
}

TEST_CASE("omega export enumerates the coefficient tensor") {
    const WitnessSpec ws = witness_from_state(isotropic(0.8));
    const auto j = io::omega_to_json(ws.omega);
    CHECK(j.at("qubits_per_side") == 1);
    CHECK(j.at("coefficients").size() == 36);
    // find omega^{11}_{++} = -2/9
    bool found = false;
    for (const auto& entry : j.at("coefficients")) {
        if (entry.at("z") == 1 && entry.at("w") == 1 && entry.at("c") == 1 && entry.at("d") == 1) {
            CHECK(std::abs(entry.at("value").get<double>() - (-2.0 / 9.0)) < 1e-12);
            found = true;
        }
    }
    CHECK(found);
}
