#pragma once

#include "dicert/certify.hpp"
#include "dicert/selftest.hpp"
#include "dicert/states.hpp"
#include "dicert/witness.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace dicert::io {

using json = nlohmann::json;

// File schema shared by states and witnesses:
//   { "dims": [d_A, d_B], "matrix": [[[re, im], ...], ...] }   (row-major)
json operator_to_json(const Operator& op);
Operator operator_from_json(const json& j);

DensityMatrix load_state(const std::string& path);
WitnessSpec load_witness(const std::string& path);
void save_operator(const std::string& path, const Operator& op);

json omega_to_json(const PauliOmega& omega);
json selftest_to_json(const SelfTestReport& report);
json certification_to_json(const CertificationReport& report);
json sweep_to_json(const std::vector<SweepRecord>& records);
std::string sweep_to_csv(const std::vector<SweepRecord>& records);

// Full-statistics export, one row per (z,x,y,w,c,a,b,d) with the config
// digest carried for provenance. Settings are 1-based; two-outcome parties
// report +-1 outcome values, larger parties report the outcome index.
json table_to_json(const ProbabilityTable& table);
std::string table_to_csv(const ProbabilityTable& table);

// Writes text to a file, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace dicert::io
