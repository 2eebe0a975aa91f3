#pragma once

#include <complex>
#include <set>
#include <utility>
#include <vector>

#include "freekernel/kmatrix.hpp"

namespace freekernel::schur {

using kmatrix::cplx;
using kmatrix::Matrix;

/// Triangular family {gamma_{k,j}}_{0 <= k < j <= n} of scalar contractions.
/// gamma_{k,k} is identically 0 and never stored. Entries whose affine
/// dependence degenerated during extraction are flagged and fixed to 0.
class SchurParameterTable {
public:
    explicit SchurParameterTable(int n);

    int size() const { return n_; }
    cplx gamma(int k, int j) const;
    /// sqrt(1 - |gamma|^2); values of 1-|gamma|^2 in [-1e-12, 0) clamp to 0,
    /// below that throws (contraction violation).
    double defect(int k, int j) const;
    bool is_degenerate(int k, int j) const;

    /// Throws if |g| > 1 + 1e-12.
    void set_gamma(int k, int j, cplx g);
    void set_degenerate(int k, int j);
    std::vector<std::pair<int, int>> degenerate_pairs() const;

private:
    int offset(int k, int j) const;
    int n_;
    std::vector<cplx> gamma_;
    std::set<std::pair<int, int>> degenerate_;
};

/// [[g, d],[d, -conj g]] with d = sqrt(1-|g|^2); unitary for |g| <= 1.
Eigen::Matrix2cd julia(cplx g);

/// Transmission-line reconstruction: K(l,m) = sqrt(diag[l]) (U_{l,m})_{00}
/// sqrt(diag[m]) with U_{k,j} the cascade of Julia operators.
kmatrix::KernelMatrix reconstruct(const SchurParameterTable& params,
                                  const std::vector<double>& diag);
/// Unit diagonal.
kmatrix::KernelMatrix reconstruct(const SchurParameterTable& params);

/// Single unit-diagonal entry (U_{l,m})_{00}, l <= m.
cplx reconstruct_entry(const SchurParameterTable& params, int l, int m);

/// Parameter extraction from a positive semidefinite kernel with strictly
/// positive diagonal, solved diagonal-by-diagonal from the affine dependence
/// K(k,j) = c0 + L gamma_{k,j} R; |L R| < 1e-12 marks the entry degenerate.
SchurParameterTable extract(const kmatrix::KernelMatrix& K);

/// Test hook: rebuilds every cascade unitary and returns the largest
/// max-norm of U U^H - I.
double max_unitarity_defect(const SchurParameterTable& params);

}  // namespace freekernel::schur
