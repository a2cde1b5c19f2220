#include "dicert/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace dicert::io {

json operator_to_json(const Operator& op) {
    json dims = json::array();
    for (const auto d : op.dims) dims.push_back(d);

    json rows = json::array();
    for (Eigen::Index r = 0; r < op.dim(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < op.dim(); ++c) {
            row.push_back({op.mat(r, c).real(), op.mat(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return {{"dims", std::move(dims)}, {"matrix", std::move(rows)}};
}

Operator operator_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
        throw std::invalid_argument("operator file: expected object with 'dims' and 'matrix'");
    }
    Dims dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_integer()) throw std::invalid_argument("operator file: dims must be integers");
        dims.push_back(d.get<Eigen::Index>());
    }
    if (dims.size() != 2) {
        throw std::invalid_argument("operator file: dims must list exactly two subsystems");
    }
    const auto side = total_dim(dims);

    const auto& rows = j.at("matrix");
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != side) {
        throw std::invalid_argument("operator file: matrix row count does not match dims");
    }
    Matrix m(side, side);
    for (Eigen::Index r = 0; r < side; ++r) {
        const auto& row = rows.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != side) {
            throw std::invalid_argument("operator file: matrix is not square");
        }
        for (Eigen::Index c = 0; c < side; ++c) {
            const auto& entry = row.at(static_cast<std::size_t>(c));
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("operator file: entries must be [re, im] pairs");
            }
            m(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
    }
    return {std::move(m), std::move(dims)};
}

namespace {

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace

DensityMatrix load_state(const std::string& path) {
    return DensityMatrix{operator_from_json(parse_file(path))};
}

WitnessSpec load_witness(const std::string& path) {
    Operator op = operator_from_json(parse_file(path));
    if (!op.is_hermitian()) {
        throw std::invalid_argument("witness file '" + path + "': matrix not Hermitian");
    }
    return WitnessSpec{std::move(op)};
}

void save_operator(const std::string& path, const Operator& op) {
    write_text(path, operator_to_json(op).dump(2) + "\n");
}

json omega_to_json(const PauliOmega& omega) {
    json values = json::array();
    for (std::size_t z = 0; z < omega.num_settings(); ++z) {
        for (std::size_t w = 0; w < omega.num_settings(); ++w) {
            for (std::size_t c = 0; c < omega.num_outcomes(); ++c) {
                for (std::size_t d = 0; d < omega.num_outcomes(); ++d) {
                    values.push_back({{"z", z + 1},
                                      {"w", w + 1},
                                      {"c", outcome_sign(c)},
                                      {"d", outcome_sign(d)},
                                      {"value", omega.at(z, w, c, d)}});
                }
            }
        }
    }
    return {{"qubits_per_side", omega.qubits_per_side}, {"coefficients", std::move(values)}};
}

json selftest_to_json(const SelfTestReport& report) {
    return {{"J_left", report.j_left},     {"J_right", report.j_right},
            {"target", report.target},     {"tolerance", report.tolerance},
            {"passed", report.passed},     {"deficit", report.deficit()}};
}

json certification_to_json(const CertificationReport& report) {
    json j{{"verdict", to_string(report.verdict)},
           {"selftest", selftest_to_json(report.selftest)},
           {"witness_trace", report.witness_trace},
           {"config_digest", report.config_digest},
           {"seed", report.seed}};
    j["I"] = report.i_value ? json(*report.i_value) : json(nullptr);
    return j;
}

json sweep_to_json(const std::vector<SweepRecord>& records) {
    json rows = json::array();
    for (const auto& r : records) {
        rows.push_back(
            {{"v", r.visibility}, {"J", r.j}, {"I", r.i}, {"detected", r.detected}});
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "v,J,I,detected\n";
    char line[128];
    for (const auto& r : records) {
        std::snprintf(line, sizeof(line), "%.12g,%.12g,%.12g,%d\n", r.visibility, r.j, r.i,
                      r.detected ? 1 : 0);
        out << line;
    }
    return out.str();
}

namespace {

long outcome_label(std::size_t index, std::size_t num_outcomes) {
    return num_outcomes == 2 ? outcome_sign(index) : static_cast<long>(index);
}

template <typename Row>
void for_each_table_row(const ProbabilityTable& t, Row&& row) {
    std::size_t idx = 0;
    for (std::size_t z = 0; z < t.num_settings[0]; ++z)
    for (std::size_t x = 0; x < t.num_settings[1]; ++x)
    for (std::size_t y = 0; y < t.num_settings[2]; ++y)
    for (std::size_t w = 0; w < t.num_settings[3]; ++w)
    for (std::size_t c = 0; c < t.num_outcomes[0]; ++c)
    for (std::size_t a = 0; a < t.num_outcomes[1]; ++a)
    for (std::size_t b = 0; b < t.num_outcomes[2]; ++b)
    for (std::size_t d = 0; d < t.num_outcomes[3]; ++d) {
        row(z + 1, x + 1, y + 1, w + 1, outcome_label(c, t.num_outcomes[0]),
            outcome_label(a, t.num_outcomes[1]), outcome_label(b, t.num_outcomes[2]),
            outcome_label(d, t.num_outcomes[3]), t.values[idx++]);
    }
}

}  // namespace

json table_to_json(const ProbabilityTable& table) {
    json rows = json::array();
    for_each_table_row(table, [&](std::size_t z, std::size_t x, std::size_t y, std::size_t w,
                                  long c, long a, long b, long d, double p) {
        rows.push_back({z, x, y, w, c, a, b, d, p});
    });
    return {{"config_digest", table.config_digest},
            {"columns", {"z", "x", "y", "w", "c", "a", "b", "d", "p"}},
            {"rows", std::move(rows)}};
}

std::string table_to_csv(const ProbabilityTable& table) {
    std::ostringstream out;
    out << "# config_digest=" << table.config_digest << "\n";
    out << "z,x,y,w,c,a,b,d,p\n";
    char line[160];
    for_each_table_row(table, [&](std::size_t z, std::size_t x, std::size_t y, std::size_t w,
                                  long c, long a, long b, long d, double p) {
        std::snprintf(line, sizeof(line), "%zu,%zu,%zu,%zu,%ld,%ld,%ld,%ld,%.12g\n", z, x, y, w, c,
                      a, b, d, p);
        out << line;
    });
    return out.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

}  // namespace dicert::io
