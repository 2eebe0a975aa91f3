#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "freekernel/invariant.hpp"
#include "freekernel/kmatrix.hpp"
#include "freekernel/schur.hpp"

namespace testsupport {

using freekernel::kmatrix::cplx;
using freekernel::kmatrix::Matrix;

inline cplx random_unit_box(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

inline cplx random_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const cplx z{u(rng), u(rng)};
        if (std::abs(z) <= 1.0) return radius * z;
    }
}

/// Strictly positive definite hermitian matrix M^H M / n + ridge I.
inline Matrix random_spd(std::mt19937_64& rng, int n, double ridge = 0.5) {
    Matrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = random_unit_box(rng);
    Matrix K = (M.adjoint() * M) / static_cast<double>(n) + ridge * Matrix::Identity(n, n);
    return (K + K.adjoint()) / 2.0;
}

inline freekernel::kmatrix::KernelMatrix random_spd_kernel(std::mt19937_64& rng, int n,
                                                           double ridge = 0.5) {
    return freekernel::kmatrix::build_kernel(random_spd(rng, n, ridge));
}

inline freekernel::schur::SchurParameterTable random_params(std::mt19937_64& rng, int n,
                                                            double cap) {
    freekernel::schur::SchurParameterTable params(n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < j; ++k) params.set_gamma(k, j, random_disk(rng, cap));
    return params;
}

/// Moments of a discrete measure on the unit circle (atoms + weights),
/// normalized to c(0) = 1: always a positive definite Toeplitz sequence.
inline freekernel::invariant::ToeplitzMoments random_toeplitz_moments(std::mt19937_64& rng,
                                                                      int depth) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    const int atoms = depth + 3;
    std::vector<double> w(atoms), th(atoms);
    double total = 0.0;
    for (int a = 0; a < atoms; ++a) {
        w[a] = weight(rng);
        th[a] = angle(rng);
        total += w[a];
    }
    std::vector<cplx> c(static_cast<std::size_t>(depth) + 1, cplx(0.0));
    for (int k = 0; k <= depth; ++k)
        for (int a = 0; a < atoms; ++a)
            c[static_cast<std::size_t>(k)] +=
                (w[a] / total) * std::exp(cplx(0.0, k * th[a]));
    c[0] = 1.0;
    return freekernel::invariant::ToeplitzMoments(std::move(c));
}

/// Selfadjoint with exactly zero diagonal (scalar blocks).
inline Matrix random_zero_diag(std::mt19937_64& rng, int p) {
    Matrix A = Matrix::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < i; ++j) {
            A(i, j) = random_unit_box(rng);
            A(j, i) = std::conj(A(i, j));
        }
    return A;
}

struct Inertia {
    int positive = 0, negative = 0, zero = 0;
};

inline Inertia inertia_by_eigenvalues(const Matrix& A, double tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    Inertia in;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i);
        if (v > tol)
            ++in.positive;
        else if (v < -tol)
            ++in.negative;
        else
            ++in.zero;
    }
    return in;
}

inline double max_abs(const Matrix& A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

}  // namespace testsupport
