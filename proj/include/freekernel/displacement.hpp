#pragma once

#include <optional>
#include <vector>

#include "freekernel/kmatrix.hpp"

namespace freekernel::displacement {

using kmatrix::cplx;
using kmatrix::Matrix;

/// A displacement equation R - sum_k F_k R' F_k^H = G J G^H with its
/// residual evaluator. R' = R_next when present (the N=1 forward family),
/// otherwise R itself (the invariant-kernel equation).
struct DisplacementSystem {
    Matrix R;
    std::vector<Matrix> shifts;  // partial shifts: at most one 1 per row/column
    Matrix G;
    Matrix J;  // symmetry: hermitian, J^2 = I
    std::optional<Matrix> R_next;

    double residual() const;
};

struct Generators {
    Matrix F;  // (n+1) x (n+1) lower shift
    Matrix G;  // (n+1) x 2
    Matrix J;  // diag(1, -1)
};

/// Generators of the N=1 forward displacement equation for the moment
/// window {t..t+n}. Requires t + n + 1 <= M and s_{t,t} > 0.
Generators generators_n1(const kmatrix::KernelMatrix& s, int n, int t);

/// The assembled forward system with R = R_n(t), R_next = R_n(t+1).
DisplacementSystem forward_system_n1(const kmatrix::KernelMatrix& s, int n, int t);

/// ||R_n(t) - F R_n(t+1) F^H - G J G^H||_max.
double residual_forward_n1(const kmatrix::KernelMatrix& s, int n, int t);

struct InverseReport {
    Matrix H;                     // 2 x (n+1), rows from the coefficient tables
    double residual_inverse = 0;  // displaced-inverse equation
    double residual_cross = 0;    // F R' H^H + G J K^H = 0
    double residual_j = 0;        // H R' H^H + K J K^H = J
};

/// Inverse displacement equation R_n(t+1)^{-1} - F^H R_n(t)^{-1} F =
/// H^H J H, with H built from the shifted polynomial coefficients, plus the
/// two proof identities. Requires strict positivity.
InverseReport inverse_displacement_n1(const kmatrix::KernelMatrix& s, int n, int t);

/// Left-concatenation shifts on enumerate(N, n): (F_k h)_tau = h_sigma when
/// tau = k.sigma, else 0. Words of length n map outside the truncation and
/// are sent to 0.
std::vector<Matrix> shift_matrices(int N, int n);

/// Q(sigma, tau) = 0 when sigma and tau share a nonempty common prefix, else
/// K(sigma, tau). Verifies R - sum_k F_k R F_k^H = Q to 1e-10 and throws an
/// invariance-violation error otherwise.
kmatrix::KernelMatrix q_matrix(const kmatrix::KernelMatrix& K, int N);

/// Selfadjoint p x p block matrix with square blocks of one size and zero
/// diagonal blocks.
struct ZeroDiagonalBlockMatrix {
    int block_count = 0;  // p
    int block_size = 1;   // m
    Matrix entries;       // (p m) x (p m)

    static ZeroDiagonalBlockMatrix from_entries(Matrix entries, int block_count);
};

struct ZeroDiagFactorization {
    Matrix B;         // (p m) x ((2p-2) m)
    Matrix symmetry;  // anti-diagonal identity blocks, (2p-2) m square
};

/// A = B I_{2p-2} B^H with the strictly-lower blocks in the first p-1 block
/// columns and identity blocks anti-diagonally in rows 1..p-1. For p = 1 the
/// factor is empty.
ZeroDiagFactorization zero_diag_factor(const ZeroDiagonalBlockMatrix& A);

struct SymmetryFactorization {
    Matrix G;
    Matrix J;
    int j_dim = 0;
    double residual_q = 0.0;             // ||Q - G J G^H||_max
    double residual_displacement = 0.0;  // ||R - sum F R F^H - G J G^H||_max
};

/// Factorization Q_n = G_n J_n G_n^H of an invariant unit-diagonal kernel:
/// the glue part through diag(1,-1), the prefix-free part through the
/// zero-diagonal block factorization over the first-letter partition.
/// dim(J_n) = 2 + (2N-2) sum_{k=0}^{n-1} N^k.
SymmetryFactorization invariant_factorization(const kmatrix::KernelMatrix& K, int N);

/// The assembled invariant-kernel displacement system.
DisplacementSystem invariant_system(const kmatrix::KernelMatrix& K, int N);

struct SymmetryDiagonalization {
    Matrix W;  // unitary with W J W^H = diag(I_p, -I_{dim-p})
    int positive = 0;
};

/// Diagonalizes a 0/±1 symmetry built from fixed ±1 coordinates and swap
/// pairs, using the 2x2 rotation (1/sqrt 2)[[1,1],[1,-1]] per pair plus a
/// sorting permutation.
SymmetryDiagonalization diagonalize_symmetry(const Matrix& J);

}  // namespace freekernel::displacement
