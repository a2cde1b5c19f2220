#include "dicert/qmath.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <stdexcept>

namespace dicert {

Eigen::Index total_dim(const Dims& dims) {
    Eigen::Index n = 1;
    for (auto d : dims) n *= d;
    return n;
}

namespace {

void check_dims(const Dims& dims, Eigen::Index side, const char* what) {
    if (dims.empty()) throw std::invalid_argument(std::string(what) + ": empty dims");
    for (auto d : dims) {
        if (d < 2) throw std::invalid_argument(std::string(what) + ": subsystem dimension < 2");
    }
    if (total_dim(dims) != side) {
        throw std::invalid_argument(std::string(what) + ": dims product does not match side length");
    }
}

// Strides of each subsystem in the flat index (row-major over subsystems).
std::vector<Eigen::Index> strides_of(const Dims& dims) {
    std::vector<Eigen::Index> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        s[i - 1] = s[i] * dims[i];
    }
    return s;
}

}  // namespace

Operator::Operator(Matrix m, Dims d) : mat(std::move(m)), dims(std::move(d)) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("Operator: matrix not square");
    check_dims(dims, mat.rows(), "Operator");
}

bool Operator::is_hermitian(double tol) const {
    return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator identity_op(const Dims& dims) {
    const auto n = total_dim(dims);
    return {Matrix::Identity(n, n), dims};
}

Ket::Ket(Vector a, Dims d) : amps(std::move(a)), dims(std::move(d)) {
    check_dims(dims, amps.size(), "Ket");
    if (std::abs(amps.norm() - 1.0) > kNormTol) {
        throw std::invalid_argument("Ket: squared norm differs from 1 beyond tolerance");
    }
}

Operator Ket::projector() const {
    return {amps * amps.adjoint(), dims};
}

Operator tensor(const Operator& a, const Operator& b) {
    Dims dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    return {Eigen::kroneckerProduct(a.mat, b.mat).eval(), std::move(dims)};
}

Operator tensor(const Operator& a, const Operator& b, const Operator& c) {
    return tensor(tensor(a, b), c);
}

Ket tensor(const Ket& a, const Ket& b) {
    Dims dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    return {Eigen::kroneckerProduct(a.amps, b.amps).eval(), std::move(dims)};
}

Operator partial_trace(const Operator& m, const std::vector<std::size_t>& keep_in) {
    const std::size_t n = m.dims.size();
    std::vector<std::size_t> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw std::invalid_argument("partial_trace: duplicate subsystem index");
    }
    if (keep.back() >= n) throw std::invalid_argument("partial_trace: subsystem index out of range");

    std::vector<std::size_t> traced;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
    }
    if (traced.empty()) return m;

    const auto strides = strides_of(m.dims);

    // Flat offsets of every kept / traced multi-index in the full space.
    auto offsets = [&](const std::vector<std::size_t>& subs) {
        Eigen::Index count = 1;
        for (auto s : subs) count *= m.dims[s];
        std::vector<Eigen::Index> off(static_cast<std::size_t>(count), 0);
        Eigen::Index block = 1;
        for (std::size_t i = subs.size(); i-- > 0;) {
            const auto d = m.dims[subs[i]];
            const auto stride = strides[subs[i]];
            for (Eigen::Index f = 0; f < count; ++f) {
                off[static_cast<std::size_t>(f)] += ((f / block) % d) * stride;
            }
            block *= d;
        }
        return off;
    };

    const auto keep_off = offsets(keep);
    const auto traced_off = offsets(traced);

    Dims out_dims;
    for (auto s : keep) out_dims.push_back(m.dims[s]);
    const auto out_dim = total_dim(out_dims);

    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (Eigen::Index r = 0; r < out_dim; ++r) {
        for (Eigen::Index c = 0; c < out_dim; ++c) {
            Complex sum = 0.0;
            for (const auto t : traced_off) {
                sum += m.mat(keep_off[static_cast<std::size_t>(r)] + t,
                             keep_off[static_cast<std::size_t>(c)] + t);
            }
            out(r, c) = sum;
        }
    }
    return {std::move(out), std::move(out_dims)};
}

Operator partial_transpose(const Operator& m, std::size_t subsystem) {
    if (subsystem >= m.dims.size()) {
        throw std::invalid_argument("partial_transpose: subsystem index out of range");
    }
    const auto strides = strides_of(m.dims);
    const auto d = m.dims[subsystem];
    const auto stride = strides[subsystem];
    const auto side = m.dim();

    Matrix out(side, side);
    for (Eigen::Index r = 0; r < side; ++r) {
        const auto rd = (r / stride) % d;
        for (Eigen::Index c = 0; c < side; ++c) {
            const auto cd = (c / stride) % d;
            const auto nr = r + (cd - rd) * stride;
            const auto nc = c + (rd - cd) * stride;
            out(nr, nc) = m.mat(r, c);
        }
    }
    return {std::move(out), m.dims};
}

EigenSystem hermitian_eig(const Operator& m) {
    if (!m.is_hermitian()) throw std::invalid_argument("hermitian_eig: input not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    EigenSystem sys;
    sys.values = solver.eigenvalues();
    sys.vectors.reserve(static_cast<std::size_t>(m.dim()));
    for (Eigen::Index i = 0; i < m.dim(); ++i) {
        sys.vectors.emplace_back(solver.eigenvectors().col(i).eval(), m.dims);
    }
    return sys;
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

}  // namespace dicert
