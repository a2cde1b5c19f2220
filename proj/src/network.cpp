#include "dicert/network.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace dicert {

Povm::Povm(std::vector<Operator> effects_in) : effects(std::move(effects_in)) {
    if (effects.empty()) throw std::invalid_argument("Povm: no effects");
    const Dims& dims = effects.front().dims;
    Matrix sum = Matrix::Zero(effects.front().dim(), effects.front().dim());
    for (const auto& e : effects) {
        if (e.dims != dims) throw std::invalid_argument("Povm: effect dimensions differ");
        if (!e.is_hermitian()) throw std::invalid_argument("Povm: effect not Hermitian");
        if (min_eigenvalue(e.mat) < kPsdFloor) {
            throw std::invalid_argument("Povm: effect has eigenvalue below PSD floor");
        }
        sum += e.mat;
    }
    if ((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() > kTraceTol) {
        throw std::invalid_argument("Povm: effects do not sum to identity");
    }
}

MeasurementFamily::MeasurementFamily(std::vector<Povm> settings_in)
    : settings(std::move(settings_in)) {
    if (settings.empty()) throw std::invalid_argument("MeasurementFamily: no settings");
    const Dims& dims = settings.front().effects.front().dims;
    for (const auto& s : settings) {
        if (s.effects.front().dims != dims) {
            throw std::invalid_argument("MeasurementFamily: settings act on different spaces");
        }
    }
}

const Operator& MeasurementFamily::effect(std::size_t setting, std::size_t outcome) const {
    if (setting >= settings.size() || outcome >= settings[setting].effects.size()) {
        throw std::invalid_argument("MeasurementFamily: setting or outcome index out of range");
    }
    return settings[setting].effects[outcome];
}

int outcome_sign(std::size_t index) { return index == 0 ? +1 : -1; }

NetworkConfig::NetworkConfig(DensityMatrix rho_ca0_in, DensityMatrix rho_ab_in,
                             DensityMatrix rho_b0d_in, MeasurementFamily charlie_in,
                             MeasurementFamily alice_in, MeasurementFamily bob_in,
                             MeasurementFamily daisy_in, std::size_t alice_star_in,
                             std::size_t bob_star_in)
    : rho_ca0(std::move(rho_ca0_in)),
      rho_ab(std::move(rho_ab_in)),
      rho_b0d(std::move(rho_b0d_in)),
      charlie(std::move(charlie_in)),
      alice(std::move(alice_in)),
      bob(std::move(bob_in)),
      daisy(std::move(daisy_in)),
      alice_star(alice_star_in),
      bob_star(bob_star_in) {
    if (rho_ca0.dims().size() != 2 || rho_ab.dims().size() != 2 || rho_b0d.dims().size() != 2) {
        throw std::invalid_argument("NetworkConfig: states must be bipartite");
    }
    const Dims charlie_dims{rho_ca0.dims()[0]};
    const Dims alice_dims{rho_ca0.dims()[1], rho_ab.dims()[0]};
    const Dims bob_dims{rho_ab.dims()[1], rho_b0d.dims()[0]};
    const Dims daisy_dims{rho_b0d.dims()[1]};
    if (charlie.dims() != charlie_dims) throw std::invalid_argument("NetworkConfig: Charlie dims");
    if (alice.dims() != alice_dims) throw std::invalid_argument("NetworkConfig: Alice dims");
    if (bob.dims() != bob_dims) throw std::invalid_argument("NetworkConfig: Bob dims");
    if (daisy.dims() != daisy_dims) throw std::invalid_argument("NetworkConfig: Daisy dims");
    if (alice_star >= alice.num_settings() || bob_star >= bob.num_settings()) {
        throw std::invalid_argument("NetworkConfig: star setting index out of range");
    }
}

namespace {

int qubits_of_local_dim(Eigen::Index d) {
    int n = 0;
    Eigen::Index p = 1;
    while (p < d) {
        p *= 2;
        ++n;
    }
    if (p != d) {
        throw std::invalid_argument("canonical_config: local dimension is not a power of two");
    }
    return n;
}

DensityMatrix noisy_bell(Eigen::Index d, double visibility) {
    const Operator phi = bell_phi_plus(d).projector();
    Matrix m = visibility * phi.mat +
               (1.0 - visibility) * Matrix::Identity(d * d, d * d) / static_cast<double>(d * d);
    return {std::move(m), Dims{d, d}};
}

MeasurementFamily pauli_string_family(int n_qubits) {
    const Dims flat{static_cast<Eigen::Index>(num_sign_strings(n_qubits))};
    std::vector<Povm> settings;
    settings.reserve(num_axis_strings(n_qubits));
    for (std::size_t z = 0; z < num_axis_strings(n_qubits); ++z) {
        std::vector<Operator> effects;
        effects.reserve(num_sign_strings(n_qubits));
        for (std::size_t c = 0; c < num_sign_strings(n_qubits); ++c) {
            // dims flattened to the party's single subsystem
            effects.emplace_back(pauli_projector_string(z, c, n_qubits).mat, flat);
        }
        settings.emplace_back(std::move(effects));
    }
    return MeasurementFamily{std::move(settings)};
}

// The six rotated Pauli observables, in the setting order
// (z+x, z-x, z+y, z-y, x+y, x-y) / sqrt(2).
std::vector<Matrix> rotated_paulis() {
    const Matrix z = pauli_matrix(1);
    const Matrix x = pauli_matrix(2);
    const Matrix y = pauli_matrix(3);
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (z + x), s * (z - x), s * (z + y), s * (z - y), s * (x + y), s * (x - y)};
}

Povm star_povm(Eigen::Index d) {
    const Operator proj = Operator(bell_phi_plus(d).projector().mat, Dims{d, d});
    const Operator rest{Matrix::Identity(d * d, d * d) - proj.mat, Dims{d, d}};
    return Povm{{proj, rest}};
}

Povm observable_povm(const Matrix& obs, const Dims& dims) {
    const auto n = obs.rows();
    Operator plus{(Matrix::Identity(n, n) + obs) / 2.0, dims};
    Operator minus{(Matrix::Identity(n, n) - obs) / 2.0, dims};
    return Povm{{std::move(plus), std::move(minus)}};
}

MeasurementFamily conjugate_family(const MeasurementFamily& fam) {
    std::vector<Povm> settings;
    settings.reserve(fam.num_settings());
    for (const auto& s : fam.settings) {
        std::vector<Operator> effects;
        effects.reserve(s.effects.size());
        for (const auto& e : s.effects) effects.push_back(e.conjugate());
        settings.emplace_back(std::move(effects));
    }
    return MeasurementFamily{std::move(settings)};
}

}  // namespace

NetworkConfig canonical_config(const DensityMatrix& rho_ab, double visibility_aux) {
    if (!(visibility_aux >= 0.0 && visibility_aux <= 1.0)) {
        throw std::invalid_argument("canonical_config: visibility outside [0, 1]");
    }
    if (rho_ab.dims().size() != 2 || rho_ab.dims()[0] != rho_ab.dims()[1]) {
        throw std::invalid_argument("canonical_config: rho_AB must have equal local dimensions");
    }
    const auto d = rho_ab.dims()[0];
    const int n = qubits_of_local_dim(d);

    DensityMatrix aux = noisy_bell(d, visibility_aux);
    MeasurementFamily trusted = pauli_string_family(n);

    std::vector<Povm> alice_settings;
    std::vector<Povm> bob_settings;
    if (n == 1) {
        // Settings 1..6 act on the auxiliary qubit alone; the star setting
        // is the Bell projector on the party's joint space.
        const Operator id2 = identity_op(Dims{2});
        for (const Matrix& obs : rotated_paulis()) {
            const Povm local = observable_povm(obs, Dims{2});
            alice_settings.emplace_back(
                std::vector<Operator>{tensor(local.effects[0], id2), tensor(local.effects[1], id2)});
            bob_settings.emplace_back(
                std::vector<Operator>{tensor(id2, local.effects[0]), tensor(id2, local.effects[1])});
        }
    }
    alice_settings.push_back(star_povm(d));
    bob_settings.push_back(star_povm(d));
    const std::size_t star = alice_settings.size() - 1;

    return NetworkConfig{aux,
                         rho_ab,
                         aux,
                         trusted,
                         MeasurementFamily{std::move(alice_settings)},
                         MeasurementFamily{std::move(bob_settings)},
                         trusted,
                         star,
                         star};
}

NetworkConfig conjugate_config(const NetworkConfig& cfg, Wing wing) {
    if (wing == Wing::charlie) {
        return NetworkConfig{DensityMatrix{cfg.rho_ca0.op.conjugate()},
                             cfg.rho_ab,
                             cfg.rho_b0d,
                             conjugate_family(cfg.charlie),
                             conjugate_family(cfg.alice),
                             cfg.bob,
                             cfg.daisy,
                             cfg.alice_star,
                             cfg.bob_star};
    }
    return NetworkConfig{cfg.rho_ca0,
                         cfg.rho_ab,
                         DensityMatrix{cfg.rho_b0d.op.conjugate()},
                         cfg.charlie,
                         cfg.alice,
                         conjugate_family(cfg.bob),
                         conjugate_family(cfg.daisy),
                         cfg.alice_star,
                         cfg.bob_star};
}

Operator steering_operator(const DensityMatrix& rho_aux, const Operator& effect,
                           std::size_t measured_subsystem) {
    if (rho_aux.dims().size() != 2) {
        throw std::invalid_argument("steering_operator: auxiliary state must be bipartite");
    }
    if (measured_subsystem > 1) {
        throw std::invalid_argument("steering_operator: measured subsystem must be 0 or 1");
    }
    if (effect.dim() != rho_aux.dims()[measured_subsystem]) {
        throw std::invalid_argument("steering_operator: effect dimension mismatch");
    }
    const std::size_t kept = 1 - measured_subsystem;
    const Operator other = identity_op(Dims{rho_aux.dims()[kept]});
    const Operator embedded = measured_subsystem == 0 ? tensor(effect, other) : tensor(other, effect);
    const Operator product{embedded.mat * rho_aux.mat(), rho_aux.dims()};
    return partial_trace(product, {kept});
}

double joint_probability(const NetworkConfig& cfg, const SettingIndex& s, const OutcomeIndex& o) {
    const Operator sigma = steering_operator(cfg.rho_ca0, cfg.charlie.effect(s.z, o.c), 0);
    const Operator tau = steering_operator(cfg.rho_b0d, cfg.daisy.effect(s.w, o.d), 1);
    const Operator reduced = tensor(sigma, cfg.rho_ab.op, tau);  // (A0, A, B, B0)
    const Operator effect = tensor(cfg.alice.effect(s.x, o.a), cfg.bob.effect(s.y, o.b));
    return (effect.mat.transpose().cwiseProduct(reduced.mat)).sum().real();
}

double ProbabilityTable::at(std::size_t z, std::size_t x, std::size_t y, std::size_t w,
                            std::size_t c, std::size_t a, std::size_t b, std::size_t d) const {
    std::size_t idx = z;
    idx = idx * num_settings[1] + x;
    idx = idx * num_settings[2] + y;
    idx = idx * num_settings[3] + w;
    idx = idx * num_outcomes[0] + c;
    idx = idx * num_outcomes[1] + a;
    idx = idx * num_outcomes[2] + b;
    idx = idx * num_outcomes[3] + d;
    return values[idx];
}

namespace {

std::size_t uniform_outcomes(const MeasurementFamily& fam, const char* who) {
    const std::size_t n = fam.settings.front().num_outcomes();
    for (const auto& s : fam.settings) {
        if (s.num_outcomes() != n) {
            throw std::invalid_argument(std::string("probability_table: ") + who +
                                        " has settings with differing outcome counts");
        }
    }
    return n;
}

void validate_table(const ProbabilityTable& t) {
    double min_v = 0.0;
    double max_v = 0.0;
    for (const double v : t.values) {
        min_v = std::min(min_v, v);
        max_v = std::max(max_v, v);
    }
    if (min_v < -1e-12 || max_v > 1.0 + 1e-12) {
        throw std::logic_error("ProbabilityTable: entry outside [0, 1]");
    }

    const std::size_t block = t.num_outcomes[0] * t.num_outcomes[1] * t.num_outcomes[2] *
                              t.num_outcomes[3];
    for (std::size_t s = 0; s * block < t.values.size(); ++s) {
        double sum = 0.0;
        for (std::size_t k = 0; k < block; ++k) sum += t.values[s * block + k];
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::logic_error("ProbabilityTable: setting not normalized");
        }
    }

    if (max_signaling_deviation(t) > 1e-9) {
        throw std::logic_error("ProbabilityTable: signaling statistics");
    }
}

}  // namespace

ProbabilityTable probability_table(const NetworkConfig& cfg) {
    const std::size_t nz = cfg.charlie.num_settings();
    const std::size_t nx = cfg.alice.num_settings();
    const std::size_t ny = cfg.bob.num_settings();
    const std::size_t nw = cfg.daisy.num_settings();
    const std::size_t nc = uniform_outcomes(cfg.charlie, "Charlie");
    const std::size_t na = uniform_outcomes(cfg.alice, "Alice");
    const std::size_t nb = uniform_outcomes(cfg.bob, "Bob");
    const std::size_t nd = uniform_outcomes(cfg.daisy, "Daisy");

    const auto dim_a = cfg.rho_ab.dims()[0];
    const auto dim_b = cfg.rho_ab.dims()[1];
    const Operator id_a = identity_op(Dims{dim_a});
    const Operator id_b = identity_op(Dims{dim_b});

    // Steered auxiliary operators per trusted setting/outcome.
    std::vector<Operator> sigma;
    sigma.reserve(nz * nc);
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t c = 0; c < nc; ++c) {
            sigma.push_back(steering_operator(cfg.rho_ca0, cfg.charlie.effect(z, c), 0));
        }
    }
    std::vector<Operator> tau;
    tau.reserve(nw * nd);
    for (std::size_t w = 0; w < nw; ++w) {
        for (std::size_t d = 0; d < nd; ++d) {
            tau.push_back(steering_operator(cfg.rho_b0d, cfg.daisy.effect(w, d), 1));
        }
    }

    // Condition each untrusted effect on the steered operator of its wing,
    // leaving an operator on the A (resp. B) slot of rho_AB:
    //   F = tr_A0[ E_A (sigma (x) 1) ],  G = tr_B0[ E_B (1 (x) tau) ].
    // The entry then reduces to tr[(F (x) G) rho_AB].
    std::vector<Matrix> f(nx * na * nz * nc);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t a = 0; a < na; ++a) {
            const Operator& ea = cfg.alice.effect(x, a);
            for (std::size_t zc = 0; zc < nz * nc; ++zc) {
                const Operator cond{ea.mat * tensor(sigma[zc], id_a).mat, ea.dims};
                f[(x * na + a) * nz * nc + zc] = partial_trace(cond, {1}).mat;
            }
        }
    }
    std::vector<Matrix> g(ny * nb * nw * nd);
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t b = 0; b < nb; ++b) {
            const Operator& eb = cfg.bob.effect(y, b);
            for (std::size_t wd = 0; wd < nw * nd; ++wd) {
                const Operator cond{eb.mat * tensor(id_b, tau[wd]).mat, eb.dims};
                g[(y * nb + b) * nw * nd + wd] = partial_trace(cond, {0}).mat;
            }
        }
    }

    ProbabilityTable table;
    table.num_settings = {nz, nx, ny, nw};
    table.num_outcomes = {nc, na, nb, nd};
    table.alice_star = cfg.alice_star;
    table.bob_star = cfg.bob_star;
    table.config_digest = config_digest(cfg);
    table.values.assign(nz * nx * ny * nw * nc * na * nb * nd, 0.0);

    const Matrix& rho = cfg.rho_ab.mat();
    std::size_t idx = 0;
    for (std::size_t z = 0; z < nz; ++z) {
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t y = 0; y < ny; ++y) {
                for (std::size_t w = 0; w < nw; ++w) {
                    for (std::size_t c = 0; c < nc; ++c) {
                        for (std::size_t a = 0; a < na; ++a) {
                            const Matrix& fm = f[(x * na + a) * nz * nc + z * nc + c];
                            for (std::size_t b = 0; b < nb; ++b) {
                                for (std::size_t d = 0; d < nd; ++d) {
                                    const Matrix& gm = g[(y * nb + b) * nw * nd + w * nd + d];
                                    table.values[idx++] =
                                        (Eigen::kroneckerProduct(fm, gm).transpose().cwiseProduct(rho))
                                            .sum()
                                            .real();
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    validate_table(table);
    return table;
}

double max_signaling_deviation(const ProbabilityTable& t) {
    const auto& ns = t.num_settings;
    const auto& no = t.num_outcomes;
    double worst = 0.0;

    // For each party: the marginal over that party's outcome must not
    // depend on its setting.
    for (int party = 0; party < 4; ++party) {
        std::size_t other_settings = 1;
        std::size_t other_outcomes = 1;
        for (int p = 0; p < 4; ++p) {
            if (p == party) continue;
            other_settings *= ns[p];
            other_outcomes *= no[p];
        }
        std::vector<double> marg(ns[party] * other_settings * other_outcomes, 0.0);

        std::size_t idx = 0;
        std::size_t s[4];
        std::size_t o[4];
        for (s[0] = 0; s[0] < ns[0]; ++s[0])
        for (s[1] = 0; s[1] < ns[1]; ++s[1])
        for (s[2] = 0; s[2] < ns[2]; ++s[2])
        for (s[3] = 0; s[3] < ns[3]; ++s[3])
        for (o[0] = 0; o[0] < no[0]; ++o[0])
        for (o[1] = 0; o[1] < no[1]; ++o[1])
        for (o[2] = 0; o[2] < no[2]; ++o[2])
        for (o[3] = 0; o[3] < no[3]; ++o[3]) {
            std::size_t rest_s = 0;
            std::size_t rest_o = 0;
            for (int p = 0; p < 4; ++p) {
                if (p == party) continue;
                rest_s = rest_s * ns[p] + s[p];
                rest_o = rest_o * no[p] + o[p];
            }
            marg[(s[party] * other_settings + rest_s) * other_outcomes + rest_o] += t.values[idx];
            ++idx;
        }

        const std::size_t block = other_settings * other_outcomes;
        for (std::size_t k = 0; k < block; ++k) {
            double lo = marg[k];
            double hi = marg[k];
            for (std::size_t sp = 1; sp < ns[party]; ++sp) {
                const double v = marg[sp * block + k];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            worst = std::max(worst, hi - lo);
        }
    }
    return worst;
}

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ull;

    void add_byte(unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    }
    void add_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) add_byte(static_cast<unsigned char>(v >> (8 * i)));
    }
    void add_double(double d) { add_u64(std::bit_cast<std::uint64_t>(d)); }
    void add_matrix(const Matrix& m) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                add_double(m(r, c).real());
                add_double(m(r, c).imag());
            }
        }
    }
    void add_operator(const Operator& op) {
        for (auto d : op.dims) add_u64(static_cast<std::uint64_t>(d));
        add_matrix(op.mat);
    }
    void add_family(const MeasurementFamily& fam) {
        add_u64(fam.num_settings());
        for (const auto& s : fam.settings) {
            add_u64(s.num_outcomes());
            for (const auto& e : s.effects) add_operator(e);
        }
    }
};

}  // namespace

std::string config_digest(const NetworkConfig& cfg) {
    Fnv1a fnv;
    fnv.add_operator(cfg.rho_ca0.op);
    fnv.add_operator(cfg.rho_ab.op);
    fnv.add_operator(cfg.rho_b0d.op);
    fnv.add_family(cfg.charlie);
    fnv.add_family(cfg.alice);
    fnv.add_family(cfg.bob);
    fnv.add_family(cfg.daisy);
    fnv.add_u64(cfg.alice_star);
    fnv.add_u64(cfg.bob_star);

    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << fnv.h;
    return out.str();
}

}  // namespace dicert
