#include <doctest.h>

#include <random>

#include "freekernel/orthpoly1.hpp"
#include "support.hpp"

using namespace freekernel;
using kmatrix::cplx;
using kmatrix::Matrix;

namespace {

kmatrix::KernelMatrix toeplitz_half(int size) {
    Matrix T(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) T(i, j) = std::pow(0.5, std::abs(i - j));
    return kmatrix::build_kernel(std::move(T));
}

}  // namespace

TEST_CASE("recurrence on the identity: phi_n = X^n for every shift") {
    const auto table = orthpoly1::recurrence_polys(kmatrix::build_kernel(Matrix::Identity(6, 6)));
    for (int n = 0; n <= 5; ++n)
        for (int l = 0; n + l <= 5; ++l) {
            const auto& a = table.phi(n, l);
            for (int k = 0; k <= n; ++k)
                CHECK(std::abs(a[static_cast<std::size_t>(k)] - (k == n ? cplx(1.0) : cplx(0.0))) <
                      1e-14);
        }
}

TEST_CASE("recurrence on Toeplitz(0.5): pinned first step") {
    const auto table = orthpoly1::recurrence_polys(toeplitz_half(4));
    const double s = 1.0 / std::sqrt(0.75);
    const auto& a = table.phi(1, 0);
    CHECK(std::abs(a[0] - cplx(-0.5 * s)) < 1e-12);
    CHECK(std::abs(a[1] - cplx(s)) < 1e-12);
    const auto& b = table.phi_sharp(1, 0);
    CHECK(std::abs(b[0] - cplx(s)) < 1e-12);
    CHECK(std::abs(b[1] - cplx(-0.5 * s)) < 1e-12);
}

TEST_CASE("recurrence at l=0 equals Gram-Schmidt rows") {
    // the Gram form is conjugate linear in the coefficients, so rows of
    // kmatrix::orthonormalize carry the conjugated table entries
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const int size = 3 + static_cast<int>(rng() % 5);
        const auto s = testsupport::random_spd_kernel(rng, size);
        const auto table = orthpoly1::recurrence_polys(s);
        const auto gs = kmatrix::orthonormalize(s);
        for (int n = 0; n < size; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(std::abs(std::conj(table.phi(n, 0)[static_cast<std::size_t>(k)]) -
                               gs.rows(n, k)) < 1e-9);
    }
}

TEST_CASE("orthonormality of every shifted slice") {
    std::mt19937_64 rng(52);
    const int size = 7;
    const auto s = testsupport::random_spd_kernel(rng, size);
    const auto table = orthpoly1::recurrence_polys(s);
    const int M = size - 1;
    for (int l = 0; l <= M; ++l) {
        const int count = M - l + 1;
        Matrix B = Matrix::Zero(count, count);  // bra rows: conjugated coefficients
        for (int n = 0; n < count; ++n)
            for (int k = 0; k <= n; ++k)
                B(n, k) = std::conj(table.phi(n, l)[static_cast<std::size_t>(k)]);
        const Matrix R = s.entries.block(l, l, count, count);
        CHECK(testsupport::max_abs(B * R * B.adjoint() - Matrix::Identity(count, count)) < 1e-10);
    }
}

TEST_CASE("leading-coefficient product formulas") {
    // 1/a^l_{n,n} = sqrt(s_{l+n,l+n}) prod_k d_{l+n-k,l+n}
    // 1/b^l_{n,0} = sqrt(s_{l,l})     prod_k d_{l,l+k}
    // (the n = 0 base of the recurrence forces s_{l,l} in the second one)
    std::mt19937_64 rng(53);
    const int size = 7;
    const auto s = testsupport::random_spd_kernel(rng, size);
    const auto table = orthpoly1::recurrence_polys(s);
    const auto params = schur::extract(s);
    const int M = size - 1;
    for (int n = 1; n <= M; ++n)
        for (int l = 0; n + l <= M; ++l) {
            double lead = std::sqrt(s.entries(l + n, l + n).real());
            double sharp = std::sqrt(s.entries(l, l).real());
            for (int k = 1; k <= n; ++k) {
                lead *= params.defect(l + n - k, l + n);
                sharp *= params.defect(l, l + k);
            }
            CHECK(std::abs(1.0 / table.leading(n, l) - lead) < 1e-9);
            CHECK(std::abs(1.0 / table.sharp_constant(n, l) - sharp) < 1e-9);
            // independent dense-inverse oracle: the two linear systems give
            // a_nn^2 = (R^-1)_nn and b_0^2 = (R^-1)_00
            const Matrix R = s.entries.block(l, l, n + 1, n + 1);
            const Matrix Rinv = R.inverse();
            CHECK(table.leading(n, l) ==
                  doctest::Approx(std::sqrt(Rinv(n, n).real())).epsilon(1e-9));
            CHECK(table.sharp_constant(n, l) ==
                  doctest::Approx(std::sqrt(Rinv(0, 0).real())).epsilon(1e-9));
        }
}

TEST_CASE("Toeplitz moments give an l-independent table") {
    const auto table = orthpoly1::recurrence_polys(toeplitz_half(6));
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(std::abs(table.phi(n, 0)[static_cast<std::size_t>(k)] -
                           table.phi(n, 1)[static_cast<std::size_t>(k)]) < 1e-11);
}

TEST_CASE("coefficient systems: pinned 2x2 case") {
    const auto rep = orthpoly1::verify_coefficient_systems(toeplitz_half(2), 1, 0);
    CHECK(rep.residual_a < 1e-12);
    CHECK(rep.residual_b < 1e-12);
}

TEST_CASE("coefficient systems: identity and random moments") {
    const auto id = orthpoly1::verify_coefficient_systems(
        kmatrix::build_kernel(Matrix::Identity(5, 5)), 3, 1);
    CHECK(id.residual_a < 1e-14);
    CHECK(id.residual_b < 1e-14);
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 8; ++trial) {
        const int size = 4 + static_cast<int>(rng() % 5);
        const auto s = testsupport::random_spd_kernel(rng, size);
        for (int n = 0; n < size; ++n)
            for (int t = 0; t + n < size; ++t) {
                const auto rep = orthpoly1::verify_coefficient_systems(s, n, t);
                CHECK(rep.residual_a < 1e-9);
                CHECK(rep.residual_b < 1e-9);
            }
    }
}

TEST_CASE("degenerate moment kernels are rejected") {
    Matrix K(2, 2);
    K << 1, 1, 1, 1;
    CHECK_THROWS_AS(orthpoly1::recurrence_polys(kmatrix::build_kernel(std::move(K))),
                    std::runtime_error);
}
