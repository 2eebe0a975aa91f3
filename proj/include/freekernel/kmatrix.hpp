#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "freekernel/words.hpp"

namespace freekernel::kmatrix {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Kernel index label: an integer (kernels on {-m..n}) or a word (kernels on
/// the free semigroup).
using Label = std::variant<std::int64_t, words::Word>;

bool label_less(const Label& a, const Label& b);
std::string label_to_string(const Label& l);

/// Labeled hermitian complex matrix; entries(i,j) = K(labels[i], labels[j]).
struct KernelMatrix {
    std::vector<Label> labels;
    Matrix entries;

    Eigen::Index size() const { return entries.rows(); }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries(i, j); }
    /// Position of a label; throws std::invalid_argument if absent.
    Eigen::Index index_of(const Label& l) const;
};

/// Validates labels and hermiticity (relative tolerance 1e-10), then
/// symmetrizes exactly as (M + M^H)/2.
KernelMatrix build_kernel(std::vector<Label> labels, Matrix entries);
/// Same with integer labels 0..n-1.
KernelMatrix build_kernel(Matrix entries);

enum class Definiteness { indefinite, positive_semidefinite, strictly_positive };

const char* to_string(Definiteness d);

struct DefinitenessReport {
    Definiteness classification;
    double min_pivot;
};

/// Classification by diagonally pivoted Cholesky: strictly positive if every
/// pivot > tol, positive semidefinite if every pivot >= -tol (and the
/// uneliminated block carries no off-diagonal mass), indefinite otherwise.
DefinitenessReport definiteness(const KernelMatrix& K, double tol);
/// Default tol = 1e-10 * max|entry|.
DefinitenessReport definiteness(const KernelMatrix& K);

struct InvarianceReport {
    double max_violation = 0.0;
    bool invariant = true;  // max_violation <= 1e-10
    // argmax triple: |K(tau.sigma, tau.sigma') - K(sigma, sigma')|
    words::Word tau, sigma, sigma_prime;
};

/// Checks K(tau.sigma, tau.sigma') = K(sigma, sigma') over all triples that
/// stay inside the label set, which must be exactly enumerate(N, n).
InvarianceReport check_invariance(const KernelMatrix& K, int N);

/// Requires word labels equal to enumerate(N, n) for some n; returns n.
int word_label_depth(const KernelMatrix& K, int N);

/// Rows are the coefficient vectors of the orthonormal polynomials in the
/// monomial basis: lower triangular with positive diagonal, A K A^H = I.
struct CoefficientMatrix {
    std::vector<Label> labels;
    Matrix rows;
};

/// Gram-Schmidt orthonormalization coefficients; requires a strictly
/// positive kernel.
CoefficientMatrix orthonormalize(const KernelMatrix& K);

/// Principal submatrix with labels reordered as given.
KernelMatrix restrict_to(const KernelMatrix& K, const std::vector<Label>& sublabels);

}  // namespace freekernel::kmatrix
