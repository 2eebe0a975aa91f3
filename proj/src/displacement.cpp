#include "freekernel/displacement.hpp"

#include <cmath>
#include <stdexcept>

#include "freekernel/orthpoly1.hpp"
#include "freekernel/schur.hpp"

namespace freekernel::displacement {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kSymmetrySlack = 1e-12;

Matrix displaced(const DisplacementSystem& sys) {
    const Matrix& next = sys.R_next ? *sys.R_next : sys.R;
    Matrix lhs = sys.R;
    for (const Matrix& F : sys.shifts) lhs -= F * next * F.adjoint();
    return lhs;
}

void check_moment_window(const kmatrix::KernelMatrix& s, int n, int t, int upper) {
    const int M = static_cast<int>(s.size()) - 1;
    if (!(n >= 0 && t >= 0 && t + n + upper <= M))
        throw std::invalid_argument("displacement: window {t..t+n} out of range");
}

}  // namespace

double DisplacementSystem::residual() const {
    return (displaced(*this) - G * J * G.adjoint()).cwiseAbs().maxCoeff();
}

Generators generators_n1(const kmatrix::KernelMatrix& s, int n, int t) {
    check_moment_window(s, n, t, 1);
    const double stt = s.entries(t, t).real();
    if (!(stt > 0.0)) throw std::invalid_argument("displacement: s_{t,t} must be positive");
    Generators gen;
    gen.F = Matrix::Zero(n + 1, n + 1);
    for (int i = 1; i <= n; ++i) gen.F(i, i - 1) = 1.0;
    gen.J = Matrix::Zero(2, 2);
    gen.J(0, 0) = 1.0;
    gen.J(1, 1) = -1.0;
    gen.G = Matrix::Zero(n + 1, 2);
    const double scale = 1.0 / std::sqrt(stt);
    gen.G(0, 0) = stt * scale;
    for (int i = 1; i <= n; ++i) {
        const cplx v = std::conj(s.entries(t, t + i)) * scale;
        gen.G(i, 0) = v;
        gen.G(i, 1) = v;
    }
    return gen;
}

DisplacementSystem forward_system_n1(const kmatrix::KernelMatrix& s, int n, int t) {
    auto gen = generators_n1(s, n, t);
    DisplacementSystem sys;
    sys.R = s.entries.block(t, t, n + 1, n + 1);
    sys.R_next = s.entries.block(t + 1, t + 1, n + 1, n + 1);
    sys.shifts = {std::move(gen.F)};
    sys.G = std::move(gen.G);
    sys.J = std::move(gen.J);
    return sys;
}

double residual_forward_n1(const kmatrix::KernelMatrix& s, int n, int t) {
    return forward_system_n1(s, n, t).residual();
}

InverseReport inverse_displacement_n1(const kmatrix::KernelMatrix& s, int n, int t) {
    check_moment_window(s, n, t, 1);
    const auto table = orthpoly1::recurrence_polys(s);
    const auto gen = generators_n1(s, n, t);
    InverseReport rep;
    rep.H = Matrix::Zero(2, n + 1);
    for (int k = 0; k < n; ++k)
        rep.H(0, k) = std::conj(table.phi(n, t + 1)[static_cast<std::size_t>(k)]);
    rep.H(0, n) = table.phi(n, t + 1)[static_cast<std::size_t>(n)];  // real positive
    for (int k = 1; k <= n; ++k)
        rep.H(1, k - 1) = std::conj(table.phi_sharp(n, t)[static_cast<std::size_t>(k)]);

    const double stt = s.entries(t, t).real();
    Matrix Kmat = Matrix::Zero(2, 2);
    Kmat(1, 1) = -std::sqrt(stt) * table.sharp_constant(n, t);

    const Matrix R_t = s.entries.block(t, t, n + 1, n + 1);
    const Matrix R_next = s.entries.block(t + 1, t + 1, n + 1, n + 1);
    const Matrix Rt_inv = R_t.inverse();
    const Matrix Rnext_inv = R_next.inverse();

    rep.residual_inverse = (Rnext_inv - gen.F.adjoint() * Rt_inv * gen.F -
                            rep.H.adjoint() * gen.J * rep.H)
                               .cwiseAbs()
                               .maxCoeff();
    rep.residual_cross =
        (gen.F * R_next * rep.H.adjoint() + gen.G * gen.J * Kmat.adjoint()).cwiseAbs().maxCoeff();
    rep.residual_j = (rep.H * R_next * rep.H.adjoint() + Kmat * gen.J * Kmat.adjoint() - gen.J)
                         .cwiseAbs()
                         .maxCoeff();
    return rep;
}

std::vector<Matrix> shift_matrices(int N, int n) {
    if (N < 1 || n < 0) throw std::invalid_argument("displacement: bad shift dimensions");
    const auto basis = words::enumerate(N, n);
    const auto size = static_cast<Eigen::Index>(basis.size());
    std::vector<Matrix> shifts;
    shifts.reserve(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k) {
        Matrix F = Matrix::Zero(size, size);
        for (const auto& sigma : basis) {
            if (static_cast<int>(sigma.size()) >= n) continue;  // k.sigma leaves the truncation
            words::Word target;
            target.reserve(sigma.size() + 1);
            target.push_back(k);
            target.insert(target.end(), sigma.begin(), sigma.end());
            F(static_cast<Eigen::Index>(words::rank(target, N)),
              static_cast<Eigen::Index>(words::rank(sigma, N))) = 1.0;
        }
        shifts.push_back(std::move(F));
    }
    return shifts;
}

kmatrix::KernelMatrix q_matrix(const kmatrix::KernelMatrix& K, int N) {
    const int n = kmatrix::word_label_depth(K, N);
    const auto basis = words::enumerate(N, n);
    const auto size = static_cast<Eigen::Index>(basis.size());
    Matrix Q = Matrix::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        const auto& sigma = basis[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < size; ++j) {
            const auto& tau = basis[static_cast<std::size_t>(j)];
            const bool shared_prefix =
                !sigma.empty() && !tau.empty() && sigma.front() == tau.front();
            Q(i, j) = shared_prefix ? cplx(0.0) : K.entries(i, j);
        }
    }
    Matrix lhs = K.entries;
    for (const Matrix& F : shift_matrices(N, n)) lhs -= F * K.entries * F.adjoint();
    const double residual = (lhs - Q).cwiseAbs().maxCoeff();
    if (residual > kResidualTol)
        throw std::runtime_error(
            "displacement: invariance violation, sifting residual " + std::to_string(residual));
    return kmatrix::KernelMatrix{K.labels, std::move(Q)};
}

ZeroDiagonalBlockMatrix ZeroDiagonalBlockMatrix::from_entries(Matrix entries, int block_count) {
    if (block_count < 1) throw std::invalid_argument("displacement: need at least one block");
    if (entries.rows() != entries.cols() || entries.rows() % block_count != 0)
        throw std::invalid_argument("displacement: entries must split into equal square blocks");
    const auto m = entries.rows() / block_count;
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kSymmetrySlack)
        throw std::invalid_argument("displacement: block matrix must be selfadjoint");
    for (int k = 0; k < block_count; ++k)
        if (entries.block(k * m, k * m, m, m).cwiseAbs().maxCoeff() > kSymmetrySlack)
            throw std::invalid_argument("displacement: diagonal blocks must vanish");
    ZeroDiagonalBlockMatrix A;
    A.block_count = block_count;
    A.block_size = static_cast<int>(m);
    A.entries = std::move(entries);
    for (int k = 0; k < block_count; ++k)
        A.entries.block(k * m, k * m, m, m).setZero();
    return A;
}

ZeroDiagFactorization zero_diag_factor(const ZeroDiagonalBlockMatrix& A) {
    const int p = A.block_count;
    const int m = A.block_size;
    ZeroDiagFactorization out;
    if (p == 1) {  // zero matrix: empty factor
        out.B = Matrix::Zero(m, 0);
        out.symmetry = Matrix::Zero(0, 0);
        return out;
    }
    const int cols = 2 * p - 2;
    out.B = Matrix::Zero(p * m, cols * m);
    for (int i = 2; i <= p; ++i)
        for (int c = 1; c < i; ++c)
            out.B.block((i - 1) * m, (c - 1) * m, m, m) =
                A.entries.block((i - 1) * m, (c - 1) * m, m, m);
    for (int i = 1; i <= p - 1; ++i)
        out.B.block((i - 1) * m, (2 * p - 2 - i) * m, m, m) = Matrix::Identity(m, m);
    out.symmetry = Matrix::Zero(cols * m, cols * m);
    for (int c = 1; c <= cols; ++c)
        out.symmetry.block((c - 1) * m, (cols - c) * m, m, m) = Matrix::Identity(m, m);
    return out;
}

SymmetryFactorization invariant_factorization(const kmatrix::KernelMatrix& K, int N) {
    const int n = kmatrix::word_label_depth(K, N);
    const auto size = K.size();
    for (Eigen::Index i = 0; i < size; ++i)
        if (std::abs(K.entries(i, i) - 1.0) > kResidualTol)
            throw std::invalid_argument("displacement: kernel must have unit diagonal");
    const auto Q = q_matrix(K, N);  // also verifies invariance

    // words of length <= n-1 index each first-letter class
    const auto tails = n >= 1 ? words::enumerate(N, n - 1) : std::vector<words::Word>{};
    const auto wprime = static_cast<Eigen::Index>(n >= 1 ? tails.size() : 0);
    const Eigen::Index extra = N >= 2 ? (2 * N - 2) * wprime : 0;

    SymmetryFactorization out;
    out.j_dim = static_cast<int>(2 + extra);
    out.G = Matrix::Zero(size, 2 + extra);
    out.J = Matrix::Zero(2 + extra, 2 + extra);
    out.J(0, 0) = 1.0;
    out.J(1, 1) = -1.0;
    if (extra > 0) {
        // anti-diagonal identity blocks: block c pairs with block 2N-1-c,
        // keeping the inner index
        const Eigen::Index nblocks = 2 * N - 2;
        for (Eigen::Index c = 0; c < nblocks; ++c)
            for (Eigen::Index r = 0; r < wprime; ++r)
                out.J(2 + c * wprime + r, 2 + (nblocks - 1 - c) * wprime + r) = 1.0;
    }

    // glue columns [1, S]^H-part: row {} is (1, 0), rows sigma are K(sigma, {})
    out.G(0, 0) = 1.0;
    for (Eigen::Index r = 1; r < size; ++r) {
        out.G(r, 0) = K.entries(r, 0);
        out.G(r, 1) = K.entries(r, 0);
    }

    if (N >= 2 && n >= 1) {
        // row of word k.tau sits in block k at the shortlex index of tau
        auto row_of = [&](int k, Eigen::Index tail_index) {
            const auto& tau = tails[static_cast<std::size_t>(tail_index)];
            words::Word w;
            w.reserve(tau.size() + 1);
            w.push_back(k);
            w.insert(w.end(), tau.begin(), tau.end());
            return static_cast<Eigen::Index>(words::rank(w, N));
        };
        for (int i = 1; i <= N; ++i) {
            for (Eigen::Index x = 0; x < wprime; ++x) {
                const Eigen::Index row = row_of(i, x);
                // strictly-lower blocks A_{i,c} in block columns 1..N-1
                for (int c = 1; c < i; ++c)
                    for (Eigen::Index y = 0; y < wprime; ++y)
                        out.G(row, 2 + (c - 1) * wprime + y) =
                            Q.entries(row, row_of(c, y));
                // identity block of row i at block column 2N-1-i
                if (i <= N - 1)
                    out.G(row, 2 + (2 * N - 2 - i) * wprime + x) = 1.0;
            }
        }
    }

    out.residual_q = (Q.entries - out.G * out.J * out.G.adjoint()).cwiseAbs().maxCoeff();
    Matrix lhs = K.entries;
    for (const Matrix& F : shift_matrices(N, n)) lhs -= F * K.entries * F.adjoint();
    out.residual_displacement =
        (lhs - out.G * out.J * out.G.adjoint()).cwiseAbs().maxCoeff();
    return out;
}

DisplacementSystem invariant_system(const kmatrix::KernelMatrix& K, int N) {
    const int n = kmatrix::word_label_depth(K, N);
    auto fact = invariant_factorization(K, N);
    DisplacementSystem sys;
    sys.R = K.entries;
    sys.shifts = shift_matrices(N, n);
    sys.G = std::move(fact.G);
    sys.J = std::move(fact.J);
    return sys;
}

SymmetryDiagonalization diagonalize_symmetry(const Matrix& J) {
    const Eigen::Index dim = J.rows();
    if (J.cols() != dim) throw std::invalid_argument("displacement: symmetry must be square");
    if ((J - J.adjoint()).cwiseAbs().maxCoeff() > kSymmetrySlack ||
        (J * J - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kSymmetrySlack)
        throw std::invalid_argument("displacement: not a symmetry (J = J^H, J^2 = I)");

    // coordinates are either fixed (+1/-1 on the diagonal) or swapped in
    // pairs by a single off-diagonal 1
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<int> sign(static_cast<std::size_t>(dim), 0);
    Matrix W0 = Matrix::Zero(dim, dim);
    std::vector<bool> done(static_cast<std::size_t>(dim), false);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        const double d = J(i, i).real();
        if (std::abs(d - 1.0) <= kSymmetrySlack) {
            W0(i, i) = 1.0;
            sign[static_cast<std::size_t>(i)] = +1;
            done[static_cast<std::size_t>(i)] = true;
            continue;
        }
        if (std::abs(d + 1.0) <= kSymmetrySlack) {
            W0(i, i) = 1.0;
            sign[static_cast<std::size_t>(i)] = -1;
            done[static_cast<std::size_t>(i)] = true;
            continue;
        }
        Eigen::Index partner = -1;
        for (Eigen::Index j = i + 1; j < dim; ++j)
            if (!done[static_cast<std::size_t>(j)] &&
                std::abs(J(i, j) - 1.0) <= kSymmetrySlack) {
                partner = j;
                break;
            }
        if (partner < 0)
            throw std::invalid_argument(
                "displacement: symmetry is not a signed permutation with unit swaps");
        // (1/sqrt 2)[[1,1],[1,-1]] maps the swap pair to diag(1,-1)
        W0(i, i) = inv_sqrt2;
        W0(i, partner) = inv_sqrt2;
        W0(partner, i) = inv_sqrt2;
        W0(partner, partner) = -inv_sqrt2;
        sign[static_cast<std::size_t>(i)] = +1;
        sign[static_cast<std::size_t>(partner)] = -1;
        done[static_cast<std::size_t>(i)] = true;
        done[static_cast<std::size_t>(partner)] = true;
    }
    SymmetryDiagonalization out;
    Matrix P = Matrix::Zero(dim, dim);
    Eigen::Index next = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        if (sign[static_cast<std::size_t>(i)] > 0) P(next++, i) = 1.0;
    out.positive = static_cast<int>(next);
    for (Eigen::Index i = 0; i < dim; ++i)
        if (sign[static_cast<std::size_t>(i)] < 0) P(next++, i) = 1.0;
    out.W = P * W0;

    Matrix target = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) target(i, i) = i < out.positive ? 1.0 : -1.0;
    if ((out.W * J * out.W.adjoint() - target).cwiseAbs().maxCoeff() > kSymmetrySlack)
        throw std::runtime_error("displacement: symmetry diagonalization failed");
    return out;
}

}  // namespace freekernel::displacement
