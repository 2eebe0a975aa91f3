#include "freekernel/markov.hpp"

#include <algorithm>
#include <stdexcept>

#include "freekernel/schur.hpp"

namespace freekernel::markov {

namespace {

constexpr double kGlueTol = 1e-10;

/// Requires integer labels lo..hi ascending; returns the count above lo.
int interval_extent(const kmatrix::KernelMatrix& K, std::int64_t lo, const char* side) {
    const auto n = static_cast<std::int64_t>(K.size()) - 1;
    if (n < 0) throw std::invalid_argument(std::string("markov: empty ") + side + " factor");
    for (std::int64_t i = 0; i <= n; ++i)
        if (!(K.labels[static_cast<std::size_t>(i)] == kmatrix::Label{lo + i}))
            throw std::invalid_argument(std::string("markov: ") + side +
                                        " factor labels must be a contiguous integer interval");
    return static_cast<int>(n);
}

void require_psd(const kmatrix::KernelMatrix& K, const char* side) {
    const auto rep = kmatrix::definiteness(K);
    if (rep.classification == kmatrix::Definiteness::indefinite)
        throw std::runtime_error(std::string("markov: ") + side +
                                 " factor is not positive semidefinite (min pivot " +
                                 std::to_string(rep.min_pivot) + ")");
}

}  // namespace

GluedKernel markov_product(const kmatrix::KernelMatrix& right,
                           const kmatrix::KernelMatrix& left) {
    const int n = interval_extent(right, 0, "right");
    const auto m_rows = static_cast<std::int64_t>(left.size()) - 1;
    const int m = interval_extent(left, -m_rows, "left");
    require_psd(right, "right");
    require_psd(left, "left");
    const kmatrix::cplx glue_r = right.entries(0, 0);
    const kmatrix::cplx glue_l = left.entries(m, m);
    if (std::abs(glue_r - glue_l) > kGlueTol)
        throw std::runtime_error("markov: glue value mismatch at the common point");

    const int total = m + n + 1;
    kmatrix::Matrix P(total, total);
    // left block occupies positions 0..m (labels -m..0), right block m..m+n
    P.topLeftCorner(m + 1, m + 1) = left.entries;
    P.bottomRightCorner(n + 1, n + 1) = right.entries;
    for (int a1 = 1; a1 <= n; ++a1) {
        for (int a2 = 0; a2 < m; ++a2) {
            const kmatrix::cplx v = right.entries(a1, 0) * left.entries(m, a2);
            P(m + a1, a2) = v;
            P(a2, m + a1) = std::conj(v);
        }
    }
    std::vector<kmatrix::Label> labels;
    labels.reserve(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) labels.emplace_back(static_cast<std::int64_t>(i - m));
    return GluedKernel{left, right, kmatrix::build_kernel(std::move(labels), std::move(P))};
}

MarkovParameterReport verify_markov_parameters(const kmatrix::KernelMatrix& right,
                                               const kmatrix::KernelMatrix& left) {
    const GluedKernel glued = markov_product(right, left);
    const int n = static_cast<int>(right.size()) - 1;
    const int m = static_cast<int>(left.size()) - 1;
    const auto prod_params = schur::extract(glued.product);
    const auto left_params = schur::extract(left);
    const auto right_params = schur::extract(right);
    MarkovParameterReport rep;
    for (int k = 0; k < m + n + 1; ++k) {
        for (int j = k + 1; j <= m + n; ++j) {
            const kmatrix::cplx g = prod_params.gamma(k, j);
            if (j <= m) {
                rep.max_left_deviation =
                    std::max(rep.max_left_deviation, std::abs(g - left_params.gamma(k, j)));
            } else if (k >= m) {
                rep.max_right_deviation = std::max(
                    rep.max_right_deviation, std::abs(g - right_params.gamma(k - m, j - m)));
            } else {
                rep.max_cross_magnitude = std::max(rep.max_cross_magnitude, std::abs(g));
            }
        }
    }
    rep.max_deviation = std::max({rep.max_left_deviation, rep.max_right_deviation,
                                  rep.max_cross_magnitude});
    return rep;
}

}  // namespace freekernel::markov
