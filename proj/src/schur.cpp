#include "freekernel/schur.hpp"

#include <cmath>
#include <stdexcept>

namespace freekernel::schur {

namespace {

constexpr double kContractionSlack = 1e-12;
constexpr double kDefectFloor = -1e-12;
constexpr double kDegenerateProduct = 1e-12;
constexpr double kConsistencySlack = 1e-8;

/// In-place left multiplication by I_{row} + J(g) + I_rest acting on rows
/// row, row+1.
void apply_julia_rows(Matrix& U, Eigen::Index row, cplx g, double d) {
    for (Eigen::Index c = 0; c < U.cols(); ++c) {
        const cplx a = U(row, c), b = U(row + 1, c);
        U(row, c) = g * a + d * b;
        U(row + 1, c) = d * a - std::conj(g) * b;
    }
}

/// In-place right multiplication of a row vector by the same factor,
/// touching columns col, col+1.
void apply_julia_cols(Eigen::RowVectorXcd& v, Eigen::Index col, cplx g, double d) {
    const cplx a = v(col), b = v(col + 1);
    v(col) = a * g + b * d;
    v(col + 1) = a * d - b * std::conj(g);
}

/// U_{k,j} = F_1 ... F_{j-k} (U_{k+1,j} + I_1), factors applied right to left.
Matrix cascade(const SchurParameterTable& params, int k, int j, const Matrix& inner) {
    const int r = j - k;
    Matrix U = Matrix::Zero(r + 1, r + 1);
    U.topLeftCorner(r, r) = inner;
    U(r, r) = 1.0;
    for (int i = r; i >= 1; --i)
        apply_julia_rows(U, i - 1, params.gamma(k, k + i), params.defect(k, k + i));
    return U;
}

std::vector<double> unit_diag(int n) { return std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0); }

}  // namespace

SchurParameterTable::SchurParameterTable(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("schur: table size must be >= 0");
    gamma_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, cplx(0.0, 0.0));
}

int SchurParameterTable::offset(int k, int j) const {
    if (!(0 <= k && k < j && j <= n_))
        throw std::invalid_argument("schur: parameter index out of range");
    return j * (j - 1) / 2 + k;
}

cplx SchurParameterTable::gamma(int k, int j) const { return gamma_[static_cast<std::size_t>(offset(k, j))]; }

double SchurParameterTable::defect(int k, int j) const {
    const double s = 1.0 - std::norm(gamma(k, j));
    if (s < kDefectFloor)
        throw std::runtime_error("schur: contraction violation, |gamma| > 1");
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

bool SchurParameterTable::is_degenerate(int k, int j) const {
    offset(k, j);
    return degenerate_.count({k, j}) != 0;
}

void SchurParameterTable::set_gamma(int k, int j, cplx g) {
    if (std::abs(g) > 1.0 + kContractionSlack)
        throw std::runtime_error("schur: contraction violation, |gamma| > 1");
    gamma_[static_cast<std::size_t>(offset(k, j))] = g;
    degenerate_.erase({k, j});
}

void SchurParameterTable::set_degenerate(int k, int j) {
    gamma_[static_cast<std::size_t>(offset(k, j))] = cplx(0.0, 0.0);
    degenerate_.insert({k, j});
}

std::vector<std::pair<int, int>> SchurParameterTable::degenerate_pairs() const {
    return {degenerate_.begin(), degenerate_.end()};
}

Eigen::Matrix2cd julia(cplx g) {
    if (std::abs(g) > 1.0 + kContractionSlack)
        throw std::runtime_error("schur: contraction violation, |gamma| > 1");
    const double s = 1.0 - std::norm(g);
    const double d = s > 0.0 ? std::sqrt(s) : 0.0;
    Eigen::Matrix2cd J;
    J << g, d, d, -std::conj(g);
    return J;
}

kmatrix::KernelMatrix reconstruct(const SchurParameterTable& params,
                                  const std::vector<double>& diag) {
    const int n = params.size();
    if (static_cast<int>(diag.size()) != n + 1)
        throw std::invalid_argument("schur: diagonal length must be n+1");
    for (double d : diag)
        if (!(d > 0.0)) throw std::invalid_argument("schur: diagonal must be strictly positive");
    Matrix K(n + 1, n + 1);
    for (int l = 0; l <= n; ++l) K(l, l) = diag[static_cast<std::size_t>(l)];
    std::vector<Matrix> prev(static_cast<std::size_t>(n) + 1, Matrix::Identity(1, 1));
    for (int r = 1; r <= n; ++r) {
        std::vector<Matrix> cur(static_cast<std::size_t>(n - r) + 1);
        for (int k = 0; k + r <= n; ++k) {
            const int j = k + r;
            Matrix U = cascade(params, k, j, prev[static_cast<std::size_t>(k) + 1]);
            const cplx val = std::sqrt(diag[static_cast<std::size_t>(k)]) * U(0, 0) *
                             std::sqrt(diag[static_cast<std::size_t>(j)]);
            K(k, j) = val;
            K(j, k) = std::conj(val);
            cur[static_cast<std::size_t>(k)] = std::move(U);
        }
        prev = std::move(cur);
    }
    return kmatrix::build_kernel(std::move(K));
}

kmatrix::KernelMatrix reconstruct(const SchurParameterTable& params) {
    return reconstruct(params, unit_diag(params.size()));
}

cplx reconstruct_entry(const SchurParameterTable& params, int l, int m) {
    if (!(0 <= l && l <= m && m <= params.size()))
        throw std::invalid_argument("schur: entry index out of range");
    Matrix U = Matrix::Identity(1, 1);
    for (int k = m - 1; k >= l; --k) U = cascade(params, k, m, U);
    return U(0, 0);
}

SchurParameterTable extract(const kmatrix::KernelMatrix& K) {
    const auto rep = kmatrix::definiteness(K);
    if (rep.classification == kmatrix::Definiteness::indefinite)
        throw std::runtime_error("schur: extract requires a positive semidefinite kernel");
    const int n = static_cast<int>(K.size()) - 1;
    if (n < 0) throw std::invalid_argument("schur: empty kernel");
    std::vector<double> rt(static_cast<std::size_t>(n) + 1);
    for (int l = 0; l <= n; ++l) {
        const double d = K.entries(l, l).real();
        if (!(d > 0.0))
            throw std::runtime_error("schur: extract requires a strictly positive diagonal");
        rt[static_cast<std::size_t>(l)] = std::sqrt(d);
    }
    SchurParameterTable params(n);
    std::vector<Matrix> prev(static_cast<std::size_t>(n) + 1, Matrix::Identity(1, 1));
    for (int r = 1; r <= n; ++r) {
        std::vector<Matrix> cur(static_cast<std::size_t>(n - r) + 1);
        for (int k = 0; k + r <= n; ++k) {
            const int j = k + r;
            // v = e_0^T F_1 ... F_{r-1}: the open upper wire of the cascade
            Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Zero(r + 1);
            v(0) = 1.0;
            for (int i = 1; i <= r - 1; ++i)
                apply_julia_cols(v, i - 1, params.gamma(k, k + i), params.defect(k, k + i));
            // w = first column of U_{k+1,j}, padded with one zero
            const Matrix& inner = prev[static_cast<std::size_t>(k) + 1];
            cplx c0 = 0.0;
            for (int x = 0; x + 2 <= r; ++x) c0 += v(x) * inner(x, 0);
            const cplx lr = v(r - 1) * inner(r - 1, 0);
            const cplx target = K.entries(k, j) /
                                (rt[static_cast<std::size_t>(k)] * rt[static_cast<std::size_t>(j)]);
            if (std::abs(lr) < kDegenerateProduct) {
                params.set_degenerate(k, j);
            } else {
                cplx g = (target - c0) / lr;
                const double mag = std::abs(g);
                if (mag > 1.0 + kConsistencySlack)
                    throw std::runtime_error(
                        "schur: numerical consistency failure, solved |gamma| = " +
                        std::to_string(mag));
                if (mag > 1.0) g /= mag;  // PSD boundary, project onto the circle
                params.set_gamma(k, j, g);
            }
            cur[static_cast<std::size_t>(k)] = cascade(params, k, j, inner);
        }
        prev = std::move(cur);
    }
    return params;
}

double max_unitarity_defect(const SchurParameterTable& params) {
    const int n = params.size();
    double worst = 0.0;
    std::vector<Matrix> prev(static_cast<std::size_t>(n) + 1, Matrix::Identity(1, 1));
    for (int r = 1; r <= n; ++r) {
        std::vector<Matrix> cur(static_cast<std::size_t>(n - r) + 1);
        for (int k = 0; k + r <= n; ++k) {
            Matrix U = cascade(params, k, k + r, prev[static_cast<std::size_t>(k) + 1]);
            const double defect =
                (U * U.adjoint() - Matrix::Identity(r + 1, r + 1)).cwiseAbs().maxCoeff();
            worst = std::max(worst, defect);
            cur[static_cast<std::size_t>(k)] = std::move(U);
        }
        prev = std::move(cur);
    }
    return worst;
}

}  // namespace freekernel::schur
