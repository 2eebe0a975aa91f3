#include <doctest.h>

#include <random>

#include "freekernel/markov.hpp"
#include "support.hpp"

using namespace freekernel;
using kmatrix::cplx;
using kmatrix::Label;
using kmatrix::Matrix;

namespace {

kmatrix::KernelMatrix interval_kernel(Matrix entries, std::int64_t lo) {
    std::vector<Label> labels;
    for (Eigen::Index i = 0; i < entries.rows(); ++i) labels.emplace_back(lo + i);
    return kmatrix::build_kernel(std::move(labels), std::move(entries));
}

}  // namespace

TEST_CASE("markov_product: pinned 2+2 example") {
    Matrix r(2, 2), l(2, 2);
    r << 1, 0.5, 0.5, 1;
    l << 1, 0.3, 0.3, 1;
    const auto glued = markov::markov_product(interval_kernel(r, 0), interval_kernel(l, -1));
    const auto& P = glued.product;
    CHECK(P.size() == 3);
    CHECK(P.labels.front() == Label{std::int64_t{-1}});
    CHECK(P.labels.back() == Label{std::int64_t{1}});
    // K(1,-1) = K1(1,0) K2(0,-1)
    CHECK(P.entries(2, 0).real() == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(P.entries(0, 2).real() == doctest::Approx(0.15).epsilon(1e-14));
    // rule (1): restrictions are bit-identical
    CHECK(testsupport::max_abs(P.entries.topLeftCorner(2, 2) - l) == 0.0);
    CHECK(testsupport::max_abs(P.entries.bottomRightCorner(2, 2) - r) == 0.0);
    CHECK(kmatrix::definiteness(P).classification != kmatrix::Definiteness::indefinite);
}

TEST_CASE("markov_product: identity factor gives a zero cross block") {
    std::mt19937_64 rng(31);
    const auto right = interval_kernel(Matrix::Identity(3, 3), 0);
    Matrix lentries = testsupport::random_spd(rng, 4);
    lentries /= lentries(3, 3).real();  // glue value 1 to match the identity
    const auto glued = markov::markov_product(right, interval_kernel(lentries, -3));
    for (int a1 = 1; a1 <= 2; ++a1)
        for (int a2 = 0; a2 < 3; ++a2) CHECK(std::abs(glued.product.entries(3 + a1, a2)) == 0.0);
}

TEST_CASE("markov_product: degenerate one-point factors") {
    Matrix one(1, 1);
    one << 2.0;
    const auto glued =
        markov::markov_product(interval_kernel(one, 0), interval_kernel(one, 0));
    CHECK(glued.product.size() == 1);
    CHECK(glued.product.entries(0, 0).real() == doctest::Approx(2.0));
}

TEST_CASE("markov_product: error paths") {
    Matrix r(2, 2), l(2, 2);
    r << 1, 0.5, 0.5, 1;
    l << 2, 0.3, 0.3, 2;  // glue mismatch: 2 vs 1
    CHECK_THROWS_AS(markov::markov_product(interval_kernel(r, 0), interval_kernel(l, -1)),
                    std::runtime_error);
    Matrix bad(2, 2);
    bad << 0, 1, 1, 0;
    CHECK_THROWS_AS(markov::markov_product(interval_kernel(bad, 0), interval_kernel(l, -1)),
                    std::runtime_error);
    CHECK_THROWS_AS(
        markov::markov_product(kmatrix::build_kernel(Matrix::Identity(2, 2)),
                               interval_kernel(l, -2)),  // labels not ending at 0
        std::invalid_argument);
}

TEST_CASE("verify_markov_parameters: pinned 2+2 and identity cases") {
    Matrix r(2, 2), l(2, 2);
    r << 1, 0.5, 0.5, 1;
    l << 1, 0.3, 0.3, 1;
    const auto rep =
        markov::verify_markov_parameters(interval_kernel(r, 0), interval_kernel(l, -1));
    CHECK(rep.max_cross_magnitude < 1e-10);
    CHECK(rep.max_deviation < 1e-10);
    const auto id = markov::verify_markov_parameters(
        interval_kernel(Matrix::Identity(3, 3), 0), interval_kernel(Matrix::Identity(2, 2), -1));
    CHECK(id.max_deviation == 0.0);
}

TEST_CASE("verify_markov_parameters: random factors keep the block structure") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const int m = 1 + static_cast<int>(rng() % 5);
        Matrix r = testsupport::random_spd(rng, n + 1);
        Matrix l = testsupport::random_spd(rng, m + 1);
        // normalize both glue values to 1
        r /= r(0, 0).real();
        l /= l(m, m).real();
        const auto rep = markov::verify_markov_parameters(interval_kernel(r, 0),
                                                          interval_kernel(l, -m));
        CHECK(rep.max_deviation < 1e-8);
    }
}

TEST_CASE("markov product of PSD factors is PSD") {
    // positivity (and the vanishing cross parameters) hold under the
    // normalization K(a,a) = 1 at the glue point
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const int m = 1 + static_cast<int>(rng() % 5);
        Matrix r = testsupport::random_spd(rng, n + 1);
        Matrix l = testsupport::random_spd(rng, m + 1);
        r /= r(0, 0).real();
        l /= l(m, m).real();
        const auto glued =
            markov::markov_product(interval_kernel(r, 0), interval_kernel(l, -m));
        const auto rep = kmatrix::definiteness(glued.product);
        const double norm = testsupport::max_abs(glued.product.entries);
        CHECK(rep.min_pivot > -1e-9 * norm);
    }
}
