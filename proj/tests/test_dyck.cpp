#include <doctest.h>

#include <random>
#include <set>

#include "freekernel/dyck.hpp"
#include "support.hpp"

using namespace freekernel;
using dyck::DyckPath;
using dyck::VertexClass;
using kmatrix::cplx;

TEST_CASE("catalan numbers") {
    CHECK(dyck::catalan(0) == 1);
    CHECK(dyck::catalan(1) == 1);
    CHECK(dyck::catalan(2) == 2);
    CHECK(dyck::catalan(3) == 5);
    CHECK(dyck::catalan(10) == 16796);
    CHECK(dyck::catalan(30) == 3814986502092304ull);
    CHECK_THROWS_AS(dyck::catalan(-1), std::invalid_argument);
    CHECK_THROWS_AS(dyck::catalan(40), std::overflow_error);
}

TEST_CASE("enumerate_dyck: counts, validity, order, uniqueness") {
    CHECK(dyck::enumerate_dyck(1) == std::vector<DyckPath>{{+1, -1}});
    CHECK(dyck::enumerate_dyck(2).size() == 2);
    CHECK(dyck::enumerate_dyck(0).size() == 1);
    // step order: +1 sorts before -1
    const auto step_less = [](const DyckPath& a, const DyckPath& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](int x, int y) { return x > y; });
    };
    for (int k = 0; k <= 10; ++k) {
        const auto paths = dyck::enumerate_dyck(k);
        CHECK(paths.size() == dyck::catalan(k));
        std::set<DyckPath> distinct(paths.begin(), paths.end());
        CHECK(distinct.size() == paths.size());
        for (const auto& p : paths) CHECK(dyck::is_valid(p));
        for (std::size_t i = 1; i < paths.size(); ++i) CHECK(step_less(paths[i - 1], paths[i]));
    }
    CHECK_THROWS_AS(dyck::enumerate_dyck(13), std::length_error);
    // the length-8 profile with heights 0,1,2,1,2,3,2,1,0 is enumerated
    const auto all4 = dyck::enumerate_dyck(4);
    const DyckPath figure{+1, +1, -1, +1, +1, -1, -1, -1};
    CHECK(std::find(all4.begin(), all4.end(), figure) != all4.end());
}

TEST_CASE("unrank_dyck reproduces the enumeration order") {
    for (int k = 0; k <= 9; ++k) {
        const auto paths = dyck::enumerate_dyck(k);
        for (std::size_t i = 0; i < paths.size(); ++i)
            CHECK(dyck::unrank_dyck(k, i) == paths[i]);
    }
    CHECK_THROWS_AS(dyck::unrank_dyck(3, 5), std::invalid_argument);
    CHECK_THROWS_AS(dyck::unrank_dyck(13, 0), std::length_error);
}

TEST_CASE("classify_vertex: pinned cases") {
    CHECK(dyck::classify_vertex({+1, -1}, 0, 1) == VertexClass::rise_fall);
    // vertices of ++--: (1,1) ascent, (2,2) peak, (3,1) descent
    CHECK(dyck::classify_vertex({+1, +1, -1, -1}, 0, 1) == VertexClass::rise_rise);
    CHECK(dyck::classify_vertex({+1, +1, -1, -1}, 0, 2) == VertexClass::rise_fall);
    CHECK(dyck::classify_vertex({+1, +1, -1, -1}, 1, 2) == VertexClass::fall_fall);
    CHECK(dyck::classify_vertex({+1, -1, +1, -1}, 0, 1) == VertexClass::rise_fall);
    CHECK(dyck::classify_vertex({+1, -1, +1, -1}, 1, 2) == VertexClass::rise_fall);
    CHECK(dyck::classify_vertex({+1, -1, +1, -1}, 0, 2) == VertexClass::absent);
    CHECK(dyck::classify_vertex({+1, +1, -1, +1, -1, -1}, 1, 2) == VertexClass::fall_rise);
    CHECK_THROWS_AS(dyck::classify_vertex({+1, -1}, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(dyck::classify_vertex({+1, -1}, 0, 2), std::invalid_argument);
}

TEST_CASE("classify_vertex: absent iff the height is not attained") {
    for (int k : {2, 3, 4}) {
        for (const auto& p : dyck::enumerate_dyck(k)) {
            std::vector<int> h(p.size() + 1, 0);
            for (std::size_t s = 0; s < p.size(); ++s) h[s + 1] = h[s] + p[s];
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j <= k; ++j) {
                    const bool absent = dyck::classify_vertex(p, i, j) == VertexClass::absent;
                    CHECK(absent == (h[static_cast<std::size_t>(j + i)] != j - i));
                }
        }
    }
}

TEST_CASE("path_weight: pinned products") {
    schur::SchurParameterTable p(2);
    p.set_gamma(0, 1, cplx(0.3, 0.1));
    p.set_gamma(0, 2, cplx(0.2, -0.4));
    p.set_gamma(1, 2, cplx(-0.5, 0.2));
    {
        schur::SchurParameterTable q(1);
        q.set_gamma(0, 1, cplx(0.3, 0.1));
        CHECK(std::abs(dyck::path_weight({+1, -1}, q, 0, 1) - cplx(0.3, 0.1)) < 1e-15);
    }
    {
        const cplx w = dyck::path_weight({+1, +1, -1, -1}, p, 0, 2);
        const cplx expect = p.defect(0, 1) * p.gamma(0, 2) * p.defect(1, 2);
        CHECK(std::abs(w - expect) < 1e-15);
    }
    {
        const cplx w = dyck::path_weight({+1, -1, +1, -1}, p, 0, 2);
        CHECK(std::abs(w - p.gamma(0, 1) * p.gamma(1, 2)) < 1e-15);
    }
    CHECK_THROWS_AS(dyck::path_weight({+1, -1}, p, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(dyck::path_weight({+1, -1}, p, 2, 3), std::invalid_argument);
}

TEST_CASE("path_weight equals the product over all vertex pairs") {
    // the single-walk evaluation must agree with the literal definition
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto params = testsupport::random_params(rng, 5, 0.9);
        for (const auto& p : dyck::enumerate_dyck(4)) {
            const int l = 1, m = 5;
            cplx literal = 1.0;
            for (int i = 0; i < m - l; ++i)
                for (int j = i + 1; j <= m - l; ++j) {
                    switch (dyck::classify_vertex(p, i, j)) {
                        case VertexClass::absent: break;
                        case VertexClass::rise_fall: literal *= params.gamma(l + i, l + j); break;
                        case VertexClass::fall_rise:
                            literal *= -std::conj(params.gamma(l + i, l + j));
                            break;
                        default: literal *= params.defect(l + i, l + j);
                    }
                }
            CHECK(std::abs(dyck::path_weight(p, params, l, m) - literal) < 1e-14);
        }
    }
}

TEST_CASE("kernel_by_dyck_sum: pinned values") {
    {
        schur::SchurParameterTable p(1);
        p.set_gamma(0, 1, 0.5);
        CHECK(std::abs(dyck::kernel_by_dyck_sum(p, 0, 1) - cplx(0.5)) < 1e-15);
    }
    {
        schur::SchurParameterTable p(2);
        p.set_gamma(0, 1, 0.5);
        p.set_gamma(1, 2, 0.5);
        CHECK(std::abs(dyck::kernel_by_dyck_sum(p, 0, 2) - cplx(0.25)) < 1e-15);
    }
}

TEST_CASE("cumulant sum equals the transmission-line entry") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const auto params = testsupport::random_params(rng, 6, 0.9);
        for (int l = 0; l < 6; ++l)
            for (int m = l + 1; m <= 6; ++m) {
                const cplx sum = dyck::kernel_by_dyck_sum(params, l, m);
                const cplx line = schur::reconstruct_entry(params, l, m);
                CHECK(std::abs(sum - line) < 1e-9);
            }
    }
}

TEST_CASE("parallel and serial sums agree bitwise") {
    std::mt19937_64 rng(23);
    const auto params = testsupport::random_params(rng, 8, 0.9);
    for (int m : {3, 6, 8}) {
        const cplx a = dyck::kernel_by_dyck_sum(params, 0, m);
        const cplx b = dyck::kernel_by_dyck_sum_serial(params, 0, m);
        CHECK(std::abs(a - b) < 1e-12);
        // repeated parallel evaluation is bitwise stable
        const cplx c = dyck::kernel_by_dyck_sum(params, 0, m);
        CHECK(a.real() == c.real());
        CHECK(a.imag() == c.imag());
    }
}

TEST_CASE("zeroed long-range parameters collapse the sum to the zig-zag term") {
    std::mt19937_64 rng(24);
    schur::SchurParameterTable p(5);
    cplx zigzag = 1.0;
    for (int k = 0; k < 5; ++k) {
        const cplx g = testsupport::random_disk(rng, 0.8);
        p.set_gamma(k, k + 1, g);
        zigzag *= g;
    }
    CHECK(std::abs(dyck::kernel_by_dyck_sum(p, 0, 5) - zigzag) < 1e-12);
}

TEST_CASE("seismic trajectory counts") {
    CHECK(dyck::seismic_count(1) == 1);
    CHECK(dyck::seismic_count(2) == 2);
    CHECK(dyck::seismic_count(5) == 42);
    for (int n = 0; n <= 8; ++n)
        CHECK(dyck::seismic_count_enumerated(n) == dyck::seismic_count(n));
    CHECK_THROWS_AS(dyck::seismic_count_enumerated(13), std::length_error);
}
