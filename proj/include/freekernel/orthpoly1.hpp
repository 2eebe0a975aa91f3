#pragma once

#include <vector>

#include "freekernel/kmatrix.hpp"
#include "freekernel/schur.hpp"

namespace freekernel::orthpoly1 {

using kmatrix::cplx;
using kmatrix::Matrix;

/// Coefficient tables of the shifted orthonormal polynomials phi_n(X, l) and
/// their reversed companions phi#_n(X, l), n + l <= max_index.
/// phi(n, l)[k] = a^l_{n,k}, phi_sharp(n, l)[k] = b^l_{n,k}, k = 0..n.
class ShiftedPolyTable {
public:
    ShiftedPolyTable(int max_index, const schur::SchurParameterTable& params,
                     const std::vector<double>& diag);

    int max_index() const { return max_index_; }
    const std::vector<cplx>& phi(int n, int l) const;
    const std::vector<cplx>& phi_sharp(int n, int l) const;
    /// Leading coefficient a^l_{n,n} (real positive).
    double leading(int n, int l) const;
    /// Constant coefficient b^l_{n,0} (real positive).
    double sharp_constant(int n, int l) const;

private:
    int slot(int n, int l) const;
    int max_index_;
    std::vector<std::vector<cplx>> a_, b_;
};

/// Builds the full table for the moment kernel s on {0..M} via the shifted
/// Szego-type recurrence, with parameters from schur::extract. Requires
/// strict positivity (min pivot > 1e-10 * norm).
ShiftedPolyTable recurrence_polys(const kmatrix::KernelMatrix& s);

struct CoefficientSystemReport {
    double residual_a = 0.0;  // ||R_n(t) a - (0,..,0,1/a_n)||_max
    double residual_b = 0.0;  // ||R_n(t) b - (1/b_0,0,..,0)||_max
};

/// Residuals of the two linear systems characterizing the coefficient
/// vectors on the window {t..t+n}.
CoefficientSystemReport verify_coefficient_systems(const kmatrix::KernelMatrix& s,
                                                   int n, int t);

}  // namespace freekernel::orthpoly1
