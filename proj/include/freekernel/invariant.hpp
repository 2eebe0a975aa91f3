#pragma once

#include <map>
#include <utility>
#include <vector>

#include "freekernel/kmatrix.hpp"

namespace freekernel::invariant {

using kmatrix::cplx;
using kmatrix::Matrix;
using words::Word;

/// N scalar contractions t_k in the open unit disk.
struct ContractionTuple {
    std::vector<cplx> t;

    explicit ContractionTuple(std::vector<cplx> values);
    int n_letters() const { return static_cast<int>(t.size()); }
    cplx value(int letter) const { return t.at(static_cast<std::size_t>(letter - 1)); }
    double defect(int letter) const;  // sqrt(1 - |t_letter|^2)
};

/// Finitely supported coefficient vector in the monomial basis {X_sigma}.
using PolynomialVector = std::map<Word, cplx, words::ShortlexLess>;

/// K(sigma, tau) = T_{sigma^{-1} tau} with T_{i^k} = t_i^k (k >= 0) and
/// conj(t_i)^{-k} (k < 0), multiplied over the reduced factors.
cplx t_kernel_entry(const ContractionTuple& t, const Word& sigma, const Word& tau);

/// The kernel over enumerate(N, depth); hermitian, unit diagonal, strictly
/// positive definite, invariant.
kmatrix::KernelMatrix t_kernel(const ContractionTuple& t, int depth);

/// Closed-form orthonormal polynomials of the t-kernel, in shortlex order
/// starting with phi_{} = 1: phi_k = (X_k - t_k)/d_k and
/// phi_{sigma k} = X_sigma phi_k.
std::vector<std::pair<Word, PolynomialVector>> orthonormal_polys(
    const ContractionTuple& t, int depth);

/// Matrix of the polynomial family over the given monomial basis, in the
/// same row convention as kmatrix::orthonormalize (rows carry conjugated
/// coefficients and satisfy A K A^H = I against the stored kernel).
Matrix coefficient_rows(const std::vector<std::pair<Word, PolynomialVector>>& polys,
                        const std::vector<Word>& basis);

/// Shifted polynomial (X_sigma - t_p X_q)/d_p with (q, p) = tail_split(sigma, l).
/// Requires rank(sigma) > l.
PolynomialVector shifted_poly(const ContractionTuple& t, const Word& sigma,
                              std::uint64_t l);

struct ChordalReport {
    double max_deviation = 0.0;
};

/// Verifies the Markov factorization K(tau, sigma.k) = K(tau, sigma) *
/// K(sigma, sigma.k) for every word sigma.k up to the depth and every
/// shortlex-smaller tau.
ChordalReport chordal_markov_check(const ContractionTuple& t, int depth);

/// Toeplitz moment sequence c(0..depth) with c(0) = 1; the induced kernel is
/// K(l, m) = c(m-l) for l <= m with hermitian extension.
struct ToeplitzMoments {
    std::vector<cplx> c;

    explicit ToeplitzMoments(std::vector<cplx> values);
    int depth() const { return static_cast<int>(c.size()) - 1; }
    /// phi((Z^+)^a Z^b); throws if |b-a| exceeds the stored depth.
    cplx moment(long a, long b) const;
    /// The induced (depth+1) x (depth+1) Toeplitz kernel.
    kmatrix::KernelMatrix toeplitz_kernel() const;
};

/// Free-product moment phi(W^+_sigma W_tau) of two one-variable isometric
/// factors: cancel the common prefix, group into maximal alternating
/// blocks, multiply the factor moments of the blocks.
cplx free_product_moment(const ToeplitzMoments& c1, const ToeplitzMoments& c2,
                         const Word& sigma, const Word& tau);

/// Matrix of free_product_moment over enumerate(2, depth). Requires both
/// induced Toeplitz kernels strictly positive definite to the depth.
kmatrix::KernelMatrix free_product_kernel(const ToeplitzMoments& c1,
                                          const ToeplitzMoments& c2, int depth);

}  // namespace freekernel::invariant
