#include "freekernel/invariant.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace freekernel::invariant {

namespace {

constexpr double kStrictPivot = 1e-10;

}  // namespace

ContractionTuple::ContractionTuple(std::vector<cplx> values) : t(std::move(values)) {
    if (t.empty()) throw std::invalid_argument("invariant: need at least one contraction");
    for (const cplx& v : t)
        if (!(std::abs(v) < 1.0))
            throw std::runtime_error("invariant: contraction violation, |t_k| must be < 1");
}

double ContractionTuple::defect(int letter) const {
    return std::sqrt(1.0 - std::norm(value(letter)));
}

cplx t_kernel_entry(const ContractionTuple& t, const Word& sigma, const Word& tau) {
    const int N = t.n_letters();
    for (int l : sigma)
        if (l < 1 || l > N) throw std::invalid_argument("invariant: letter out of range");
    for (int l : tau)
        if (l < 1 || l > N) throw std::invalid_argument("invariant: letter out of range");
    cplx prod = 1.0;
    for (const auto& factor : words::free_reduce(sigma, tau)) {
        const cplx base =
            factor.exponent >= 0 ? t.value(factor.letter) : std::conj(t.value(factor.letter));
        for (int i = 0; i < std::abs(factor.exponent); ++i) prod *= base;
    }
    return prod;
}

kmatrix::KernelMatrix t_kernel(const ContractionTuple& t, int depth) {
    const auto basis = words::enumerate(t.n_letters(), depth);
    const auto size = static_cast<Eigen::Index>(basis.size());
    Matrix K(size, size);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (Eigen::Index i = 0; i < size; ++i) {
        K(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < size; ++j) {
            const cplx v = t_kernel_entry(t, basis[static_cast<std::size_t>(i)],
                                          basis[static_cast<std::size_t>(j)]);
            K(i, j) = v;
            K(j, i) = std::conj(v);
        }
    }
    std::vector<kmatrix::Label> labels(basis.begin(), basis.end());
    return kmatrix::build_kernel(std::move(labels), std::move(K));
}

std::vector<std::pair<Word, PolynomialVector>> orthonormal_polys(const ContractionTuple& t,
                                                                 int depth) {
    std::vector<std::pair<Word, PolynomialVector>> out;
    for (const auto& w : words::enumerate(t.n_letters(), depth)) {
        PolynomialVector poly;
        if (w.empty()) {
            poly[w] = 1.0;
        } else {
            const int k = w.back();
            Word prefix(w.begin(), w.end() - 1);
            const double d = t.defect(k);
            poly[w] = 1.0 / d;
            poly[std::move(prefix)] = -t.value(k) / d;
        }
        out.emplace_back(w, std::move(poly));
    }
    return out;
}

Matrix coefficient_rows(const std::vector<std::pair<Word, PolynomialVector>>& polys,
                        const std::vector<Word>& basis) {
    Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(polys.size()),
                               static_cast<Eigen::Index>(basis.size()));
    std::map<Word, Eigen::Index, words::ShortlexLess> index;
    for (std::size_t j = 0; j < basis.size(); ++j)
        index[basis[j]] = static_cast<Eigen::Index>(j);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (const auto& [w, c] : polys[i].second) {
            const auto it = index.find(w);
            if (it == index.end())
                throw std::invalid_argument("invariant: polynomial support outside basis");
            // bra convention: the moment form phi(psi^+ psi') is conjugate
            // linear in the coefficients of psi, so the matrix convention
            // A K A^H = I used by kmatrix::orthonormalize holds for the
            // conjugated coefficients
            rows(static_cast<Eigen::Index>(i), it->second) = std::conj(c);
        }
    }
    return rows;
}

PolynomialVector shifted_poly(const ContractionTuple& t, const Word& sigma, std::uint64_t l) {
    const auto [q, p] = words::tail_split(sigma, l, t.n_letters());
    const double d = t.defect(p);
    PolynomialVector poly;
    poly[sigma] = 1.0 / d;
    poly[q] = -t.value(p) / d;
    return poly;
}

ChordalReport chordal_markov_check(const ContractionTuple& t, int depth) {
    const int N = t.n_letters();
    const auto all = words::enumerate(N, depth);
    ChordalReport rep;
    for (std::size_t wi = 1; wi < all.size(); ++wi) {
        const Word& w = all[wi];  // w = sigma.k
        const Word sigma(w.begin(), w.end() - 1);
        const cplx tail = t_kernel_entry(t, sigma, w);
        for (std::size_t ti = 0; ti < wi; ++ti) {
            const cplx lhs = t_kernel_entry(t, all[ti], w);
            const cplx rhs = t_kernel_entry(t, all[ti], sigma) * tail;
            rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
        }
    }
    return rep;
}

ToeplitzMoments::ToeplitzMoments(std::vector<cplx> values) : c(std::move(values)) {
    if (c.empty()) throw std::invalid_argument("invariant: moments need c(0)");
    if (std::abs(c[0] - 1.0) > 1e-12)
        throw std::invalid_argument("invariant: moments must have c(0) = 1");
    c[0] = 1.0;
}

cplx ToeplitzMoments::moment(long a, long b) const {
    const long shift = b - a;
    const long mag = std::labs(shift);
    if (mag > depth())
        throw std::out_of_range("invariant: moment shift " + std::to_string(shift) +
                                " beyond stored depth " + std::to_string(depth()));
    return shift >= 0 ? c[static_cast<std::size_t>(shift)]
                      : std::conj(c[static_cast<std::size_t>(mag)]);
}

kmatrix::KernelMatrix ToeplitzMoments::toeplitz_kernel() const {
    const int n = depth();
    Matrix K(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) K(i, j) = moment(i, j);
    return kmatrix::build_kernel(std::move(K));
}

namespace {

// One maximal same-algebra block (Z^+)^a Z^b of the reduced word. After
// prefix cancellation the blocks are pure powers: a = 0 or b = 0.
struct Block {
    int algebra;  // 1 or 2
    long a = 0;   // adjoint letters
    long b = 0;   // plain letters
};

using BlockSeq = std::vector<Block>;

cplx block_moment(const ToeplitzMoments& c1, const ToeplitzMoments& c2, const Block& blk) {
    return blk.algebra == 1 ? c1.moment(blk.a, blk.b) : c2.moment(blk.a, blk.b);
}

// The free product is multiplicative across maximal alternating blocks:
// phi(B_1 ... B_r) = phi_{i_1}(B_1) ... phi_{i_r}(B_r).
cplx evaluate_blocks(const ToeplitzMoments& c1, const ToeplitzMoments& c2,
                     const BlockSeq& blocks) {
    cplx prod = 1.0;
    for (const auto& blk : blocks) prod *= block_moment(c1, c2, blk);
    return prod;
}

BlockSeq reduced_blocks(const Word& sigma, const Word& tau) {
    for (int l : sigma)
        if (l != 1 && l != 2)
            throw std::invalid_argument("invariant: free product words use letters 1 and 2");
    for (int l : tau)
        if (l != 1 && l != 2)
            throw std::invalid_argument("invariant: free product words use letters 1 and 2");
    const auto [alpha, s, t] = words::strip_common_prefix(sigma, tau);
    (void)alpha;
    BlockSeq blocks;
    for (std::size_t i = s.size(); i-- > 0;) {
        if (!blocks.empty() && blocks.back().algebra == s[i])
            ++blocks.back().a;
        else
            blocks.push_back({s[i], 1, 0});
    }
    for (int letter : t) {
        if (!blocks.empty() && blocks.back().algebra == letter && blocks.back().a == 0)
            ++blocks.back().b;
        else
            blocks.push_back({letter, 0, 1});
    }
    return blocks;
}

}  // namespace

cplx free_product_moment(const ToeplitzMoments& c1, const ToeplitzMoments& c2,
                         const Word& sigma, const Word& tau) {
    return evaluate_blocks(c1, c2, reduced_blocks(sigma, tau));
}

kmatrix::KernelMatrix free_product_kernel(const ToeplitzMoments& c1,
                                          const ToeplitzMoments& c2, int depth) {
    for (const auto* m : {&c1, &c2}) {
        if (m->depth() < depth)
            throw std::invalid_argument("invariant: moment depth below kernel depth");
        const auto rep = kmatrix::definiteness(m->toeplitz_kernel(), kStrictPivot);
        if (rep.classification != kmatrix::Definiteness::strictly_positive)
            throw std::runtime_error(
                "invariant: factor moments are not strictly positive definite");
    }
    const auto basis = words::enumerate(2, depth);
    const auto size = static_cast<Eigen::Index>(basis.size());
    Matrix K(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        K(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < size; ++j) {
            const cplx v =
                evaluate_blocks(c1, c2, reduced_blocks(basis[static_cast<std::size_t>(i)],
                                                       basis[static_cast<std::size_t>(j)]));
            K(i, j) = v;
            K(j, i) = std::conj(v);
        }
    }
    std::vector<kmatrix::Label> labels(basis.begin(), basis.end());
    return kmatrix::build_kernel(std::move(labels), std::move(K));
}

}  // namespace freekernel::invariant
