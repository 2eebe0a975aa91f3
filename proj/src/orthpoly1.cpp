#include "freekernel/orthpoly1.hpp"

#include <cmath>
#include <stdexcept>

namespace freekernel::orthpoly1 {

namespace {

constexpr double kStrictPivot = 1e-10;
constexpr double kDegenerate = 1e-12;

}  // namespace

ShiftedPolyTable::ShiftedPolyTable(int max_index, const schur::SchurParameterTable& params,
                                   const std::vector<double>& diag)
    : max_index_(max_index) {
    if (max_index < 0) throw std::invalid_argument("orthpoly1: max index must be >= 0");
    if (params.size() < max_index || static_cast<int>(diag.size()) < max_index + 1)
        throw std::invalid_argument("orthpoly1: parameters do not cover the index range");
    const int slots = (max_index + 1) * (max_index + 2) / 2;
    a_.resize(static_cast<std::size_t>(slots));
    b_.resize(static_cast<std::size_t>(slots));
    for (int l = 0; l <= max_index; ++l) {
        const double d0 = diag[static_cast<std::size_t>(l)];
        if (!(d0 > 0.0)) throw std::invalid_argument("orthpoly1: diagonal must be positive");
        a_[static_cast<std::size_t>(slot(0, l))] = {1.0 / std::sqrt(d0)};
        b_[static_cast<std::size_t>(slot(0, l))] = {1.0 / std::sqrt(d0)};
    }
    for (int n = 1; n <= max_index; ++n) {
        for (int l = 0; n + l <= max_index; ++l) {
            const cplx g = params.gamma(l, n + l);
            if (std::abs(g) >= 1.0 - kDegenerate)
                throw std::runtime_error(
                    "orthpoly1: strictness violation, degenerate parameter at (" +
                    std::to_string(l) + "," + std::to_string(n + l) + ")");
            const double d = params.defect(l, n + l);
            const auto& prev_a = a_[static_cast<std::size_t>(slot(n - 1, l + 1))];
            const auto& prev_b = b_[static_cast<std::size_t>(slot(n - 1, l))];
            std::vector<cplx> an(static_cast<std::size_t>(n) + 1);
            std::vector<cplx> bn(static_cast<std::size_t>(n) + 1);
            for (int k = 0; k <= n; ++k) {
                // multiplication by X shifts the coefficient index by one
                const cplx shifted = k >= 1 ? prev_a[static_cast<std::size_t>(k - 1)] : cplx(0.0);
                const cplx sharp = k <= n - 1 ? prev_b[static_cast<std::size_t>(k)] : cplx(0.0);
                an[static_cast<std::size_t>(k)] = (shifted - g * sharp) / d;
                bn[static_cast<std::size_t>(k)] = (-std::conj(g) * shifted + sharp) / d;
            }
            a_[static_cast<std::size_t>(slot(n, l))] = std::move(an);
            b_[static_cast<std::size_t>(slot(n, l))] = std::move(bn);
        }
    }
}

int ShiftedPolyTable::slot(int n, int l) const {
    if (!(n >= 0 && l >= 0 && n + l <= max_index_))
        throw std::invalid_argument("orthpoly1: table index out of range");
    // row n holds l = 0..max_index-n
    const int row_start = n * (max_index_ + 1) - n * (n - 1) / 2;
    return row_start + l;
}

const std::vector<cplx>& ShiftedPolyTable::phi(int n, int l) const {
    return a_[static_cast<std::size_t>(slot(n, l))];
}

const std::vector<cplx>& ShiftedPolyTable::phi_sharp(int n, int l) const {
    return b_[static_cast<std::size_t>(slot(n, l))];
}

double ShiftedPolyTable::leading(int n, int l) const {
    return phi(n, l)[static_cast<std::size_t>(n)].real();
}

double ShiftedPolyTable::sharp_constant(int n, int l) const {
    return phi_sharp(n, l)[0].real();
}

ShiftedPolyTable recurrence_polys(const kmatrix::KernelMatrix& s) {
    const double scale = s.entries.size() == 0 ? 0.0 : s.entries.cwiseAbs().maxCoeff();
    const auto rep = kmatrix::definiteness(s, kStrictPivot * scale);
    if (rep.classification != kmatrix::Definiteness::strictly_positive)
        throw std::runtime_error("orthpoly1: moment kernel is not strictly positive (min pivot " +
                                 std::to_string(rep.min_pivot) + ")");
    const int M = static_cast<int>(s.size()) - 1;
    const auto params = schur::extract(s);
    std::vector<double> diag(static_cast<std::size_t>(M) + 1);
    for (int l = 0; l <= M; ++l) diag[static_cast<std::size_t>(l)] = s.entries(l, l).real();
    return ShiftedPolyTable(M, params, diag);
}

CoefficientSystemReport verify_coefficient_systems(const kmatrix::KernelMatrix& s, int n, int t) {
    const int M = static_cast<int>(s.size()) - 1;
    if (!(n >= 0 && t >= 0 && t + n <= M))
        throw std::invalid_argument("orthpoly1: window {t..t+n} outside the moment range");
    const auto table = recurrence_polys(s);
    const Matrix R = s.entries.block(t, t, n + 1, n + 1);
    Eigen::VectorXcd a(n + 1), b(n + 1);
    for (int k = 0; k <= n; ++k) {
        a(k) = table.phi(n, t)[static_cast<std::size_t>(k)];
        b(k) = table.phi_sharp(n, t)[static_cast<std::size_t>(k)];
    }
    Eigen::VectorXcd ra = R * a;
    Eigen::VectorXcd rb = R * b;
    ra(n) -= 1.0 / table.leading(n, t);
    rb(0) -= 1.0 / table.sharp_constant(n, t);
    return CoefficientSystemReport{ra.cwiseAbs().maxCoeff(), rb.cwiseAbs().maxCoeff()};
}

}  // namespace freekernel::orthpoly1
