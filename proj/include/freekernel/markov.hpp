#pragma once

#include "freekernel/kmatrix.hpp"

namespace freekernel::markov {

/// Two kernels glued at the common point 0 and their Markov product.
struct GluedKernel {
    kmatrix::KernelMatrix left;     // labels {-m..0}
    kmatrix::KernelMatrix right;    // labels {0..n}
    kmatrix::KernelMatrix product;  // labels {-m..n}
};

/// Markov product: restriction to each side equals the factor, cross
/// entries K(a1, a2) = right(a1, 0) * left(0, a2) for a1 > 0 > a2, hermitian
/// completion. Both factors must be positive semidefinite and agree at the
/// glue point within 1e-10.
GluedKernel markov_product(const kmatrix::KernelMatrix& right,
                           const kmatrix::KernelMatrix& left);

struct MarkovParameterReport {
    double max_left_deviation = 0.0;   // product params vs left factor block
    double max_right_deviation = 0.0;  // product params vs right factor block
    double max_cross_magnitude = 0.0;  // |gamma| across the glue point
    double max_deviation = 0.0;
};

/// Extracts the Schur parameters of the product (relabeled 0..m+n) and
/// checks the block structure: left block = left params, right block =
/// right params, cross parameters vanish.
MarkovParameterReport verify_markov_parameters(const kmatrix::KernelMatrix& right,
                                               const kmatrix::KernelMatrix& left);

}  // namespace freekernel::markov
