#include "freekernel/kmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace freekernel::kmatrix {

namespace {

constexpr double kHermitianRelTol = 1e-10;
constexpr double kInvarianceTol = 1e-10;

}  // namespace

bool label_less(const Label& a, const Label& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (a.index() == 0) return std::get<0>(a) < std::get<0>(b);
    return words::shortlex_less(std::get<1>(a), std::get<1>(b));
}

std::string label_to_string(const Label& l) {
    if (l.index() == 0) return std::to_string(std::get<0>(l));
    std::ostringstream os;
    os << '[';
    const auto& w = std::get<1>(l);
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ']';
    return os.str();
}

Eigen::Index KernelMatrix::index_of(const Label& l) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return static_cast<Eigen::Index>(i);
    throw std::invalid_argument("kmatrix: unknown label " + label_to_string(l));
}

KernelMatrix build_kernel(std::vector<Label> labels, Matrix entries) {
    if (entries.rows() != entries.cols())
        throw std::invalid_argument("kmatrix: entries must be square");
    if (static_cast<Eigen::Index>(labels.size()) != entries.rows())
        throw std::invalid_argument("kmatrix: label count must match dimension");
    {
        struct Less {
            bool operator()(const Label& a, const Label& b) const { return label_less(a, b); }
        };
        std::map<Label, int, Less> seen;
        for (const auto& l : labels)
            if (!seen.emplace(l, 0).second)
                throw std::invalid_argument("kmatrix: duplicate label " + label_to_string(l));
    }
    const double scale = entries.size() == 0 ? 0.0 : entries.cwiseAbs().maxCoeff();
    const double tol = kHermitianRelTol * (1.0 + scale);
    for (Eigen::Index i = 0; i < entries.rows(); ++i)
        for (Eigen::Index j = i; j < entries.cols(); ++j)
            if (std::abs(entries(i, j) - std::conj(entries(j, i))) > tol)
                throw std::invalid_argument("kmatrix: matrix is not hermitian at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
    Matrix sym = (entries + entries.adjoint()) / 2.0;
    return KernelMatrix{std::move(labels), std::move(sym)};
}

KernelMatrix build_kernel(Matrix entries) {
    std::vector<Label> labels;
    labels.reserve(static_cast<std::size_t>(entries.rows()));
    for (Eigen::Index i = 0; i < entries.rows(); ++i)
        labels.emplace_back(static_cast<std::int64_t>(i));
    return build_kernel(std::move(labels), std::move(entries));
}

const char* to_string(Definiteness d) {
    switch (d) {
        case Definiteness::indefinite: return "indefinite";
        case Definiteness::positive_semidefinite: return "positive-semidefinite";
        case Definiteness::strictly_positive: return "strictly-positive";
    }
    return "?";
}

DefinitenessReport definiteness(const KernelMatrix& K, double tol) {
    Matrix A = K.entries;
    const Eigen::Index n = A.rows();
    if (n == 0)
        return {Definiteness::strictly_positive, std::numeric_limits<double>::infinity()};
    std::vector<double> pivots;
    pivots.reserve(static_cast<std::size_t>(n));
    bool off_mass = false;
    Eigen::Index k = 0;
    for (; k < n; ++k) {
        Eigen::Index best = k;
        for (Eigen::Index i = k + 1; i < n; ++i)
            if (A(i, i).real() > A(best, best).real()) best = i;
        if (best != k) {
            A.row(k).swap(A.row(best));
            A.col(k).swap(A.col(best));
        }
        const double d = A(k, k).real();
        if (d <= tol) break;
        pivots.push_back(d);
        const Eigen::Index r = n - k - 1;
        if (r > 0) {
            Eigen::VectorXcd v = A.col(k).tail(r);
            A.bottomRightCorner(r, r).noalias() -= (v * v.adjoint()) / d;
        }
    }
    if (k < n) {
        // No eliminable pivot left: the remaining diagonal entries are the
        // trailing pivots; any off-diagonal mass there rules out PSD.
        for (Eigen::Index i = k; i < n; ++i) {
            pivots.push_back(A(i, i).real());
            for (Eigen::Index j = i + 1; j < n; ++j)
                if (std::abs(A(i, j)) > std::max(tol, 0.0)) off_mass = true;
        }
    }
    const double min_pivot = *std::min_element(pivots.begin(), pivots.end());
    Definiteness cls;
    if (!off_mass && min_pivot > tol)
        cls = Definiteness::strictly_positive;
    else if (!off_mass && min_pivot >= -tol)
        cls = Definiteness::positive_semidefinite;
    else
        cls = Definiteness::indefinite;
    return {cls, min_pivot};
}

DefinitenessReport definiteness(const KernelMatrix& K) {
    const double scale = K.entries.size() == 0 ? 0.0 : K.entries.cwiseAbs().maxCoeff();
    return definiteness(K, 1e-10 * scale);
}

int word_label_depth(const KernelMatrix& K, int N) {
    if (N < 1) throw std::invalid_argument("kmatrix: alphabet size must be >= 1");
    const auto size = static_cast<std::uint64_t>(K.size());
    std::uint64_t count = 1, power = 1;
    int n = 0;
    while (count < size) {
        power *= static_cast<std::uint64_t>(N);
        count += power;
        ++n;
    }
    if (count != size)
        throw std::invalid_argument(
            "kmatrix: label set size does not match enumerate(N, n) for any n");
    const auto expected = words::enumerate(N, n);
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const Label want{expected[i]};
        if (!(K.labels[i] == want))
            throw std::invalid_argument("kmatrix: labels are not enumerate(N, n)");
    }
    return n;
}

InvarianceReport check_invariance(const KernelMatrix& K, int N) {
    const int n = word_label_depth(K, N);
    const auto all = words::enumerate(N, n);
    // index of a word label is its shortlex rank
    auto at = [&](const words::Word& a, const words::Word& b) -> cplx {
        return K.entries(static_cast<Eigen::Index>(words::rank(a, N)),
                         static_cast<Eigen::Index>(words::rank(b, N)));
    };
    InvarianceReport best;
    best.max_violation = -1.0;
    const auto total = static_cast<std::int64_t>(all.size());
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        InvarianceReport local;
        local.max_violation = -1.0;
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
        for (std::int64_t ti = 1; ti < total; ++ti) {
            const words::Word& tau = all[static_cast<std::size_t>(ti)];
            const int rest = n - static_cast<int>(tau.size());
            if (rest < 0) continue;
            const auto subs = words::enumerate(N, rest);
            for (const auto& sigma : subs) {
                const auto ts = words::concat(tau, sigma);
                for (const auto& sigma2 : subs) {
                    const auto ts2 = words::concat(tau, sigma2);
                    const double dev = std::abs(at(ts, ts2) - at(sigma, sigma2));
                    if (dev > local.max_violation) {
                        local.max_violation = dev;
                        local.tau = tau;
                        local.sigma = sigma;
                        local.sigma_prime = sigma2;
                    }
                }
            }
        }
#ifdef _OPENMP
#pragma omp critical(freekernel_invariance)
#endif
        {
            auto key = [&](const InvarianceReport& r) {
                return std::make_tuple(-r.max_violation, words::rank(r.tau, N),
                                       words::rank(r.sigma, N), words::rank(r.sigma_prime, N));
            };
            if (local.max_violation >= 0.0 &&
                (best.max_violation < 0.0 || key(local) < key(best)))
                best = local;
        }
    }
    if (best.max_violation < 0.0) best.max_violation = 0.0;  // depth 0: nothing to check
    best.invariant = best.max_violation <= kInvarianceTol;
    return best;
}

CoefficientMatrix orthonormalize(const KernelMatrix& K) {
    const auto rep = definiteness(K);
    if (rep.classification != Definiteness::strictly_positive)
        throw std::runtime_error("kmatrix: degenerate kernel, orthonormalize needs strict "
                                 "positivity (min pivot " +
                                 std::to_string(rep.min_pivot) + ")");
    const Eigen::Index n = K.size();
    const Matrix& S = K.entries;
    Matrix A = Matrix::Zero(n, n);
    Matrix AS = Matrix::Zero(n, n);  // rows: A.row(j) * S
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Zero(n);
        w(i) = 1.0;
        for (int pass = 0; pass < 2; ++pass) {  // one re-orthogonalization sweep
            for (Eigen::Index j = 0; j < i; ++j) {
                const cplx c = (w * AS.row(j).adjoint())(0, 0);
                w -= c * A.row(j);
            }
        }
        Eigen::RowVectorXcd wS = w * S;
        const double norm2 = (wS * w.adjoint())(0, 0).real();
        if (!(norm2 > 0.0))
            throw std::runtime_error("kmatrix: degenerate kernel in orthonormalize");
        const double inv = 1.0 / std::sqrt(norm2);
        A.row(i) = w * inv;
        AS.row(i) = wS * inv;
    }
    return CoefficientMatrix{K.labels, std::move(A)};
}

KernelMatrix restrict_to(const KernelMatrix& K, const std::vector<Label>& sublabels) {
    std::vector<Eigen::Index> idx;
    idx.reserve(sublabels.size());
    for (const auto& l : sublabels) idx.push_back(K.index_of(l));
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = K.entries(idx[i], idx[j]);
    return KernelMatrix{sublabels, std::move(sub)};
}

}  // namespace freekernel::kmatrix
