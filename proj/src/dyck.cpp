#include "freekernel/dyck.hpp"

#include <algorithm>
#include <stdexcept>

namespace freekernel::dyck {

namespace {

constexpr int kEnumerationBound = 12;

void build_paths(DyckPath& p, int height, int remaining, std::vector<DyckPath>& out) {
    if (remaining == 0) {
        out.push_back(p);
        return;
    }
    if (height + 1 <= remaining - 1) {
        p.push_back(+1);
        build_paths(p, height + 1, remaining - 1, out);
        p.pop_back();
    }
    if (height >= 1) {
        p.push_back(-1);
        build_paths(p, height - 1, remaining - 1, out);
        p.pop_back();
    }
}

std::uint64_t binomial(int n, int k) {
    std::uint64_t b = 1;
    for (int i = 1; i <= k; ++i) {
        // b = binom(n-k+i, i) stays integral at every step
        std::uint64_t m;
        if (__builtin_mul_overflow(b, static_cast<std::uint64_t>(n - k + i), &m))
            throw std::overflow_error("dyck: catalan overflows 64 bits");
        b = m / static_cast<std::uint64_t>(i);
    }
    return b;
}

std::uint64_t count_return_trajectories(int depth, int steps_left) {
    if (steps_left == 0) return depth == 0 ? 1 : 0;
    // transmission to the next layer down is always possible; moving up
    // needs a layer above, and interface 0 reflects everything back down
    std::uint64_t c = count_return_trajectories(depth + 1, steps_left - 1);
    if (depth > 0) c += count_return_trajectories(depth - 1, steps_left - 1);
    return c;
}

// ballot counts: completions[pos][h] = number of nonnegative ways from
// height h at step pos to height 0 at step 2k
std::vector<std::vector<std::uint64_t>> ballot_table(int k) {
    const int len = 2 * k;
    std::vector<std::vector<std::uint64_t>> c(static_cast<std::size_t>(len) + 1);
    for (int pos = len; pos >= 0; --pos) {
        auto& row = c[static_cast<std::size_t>(pos)];
        row.assign(static_cast<std::size_t>(len - pos) + 1, 0);
        for (int h = 0; h <= len - pos; ++h) {
            if ((h + len - pos) % 2 != 0) continue;
            if (pos == len) {
                row[static_cast<std::size_t>(h)] = h == 0 ? 1 : 0;
                continue;
            }
            std::uint64_t ways = 0;
            if (h + 1 <= len - pos - 1)
                ways += c[static_cast<std::size_t>(pos) + 1][static_cast<std::size_t>(h) + 1];
            if (h >= 1)
                ways += c[static_cast<std::size_t>(pos) + 1][static_cast<std::size_t>(h) - 1];
            row[static_cast<std::size_t>(h)] = ways;
        }
    }
    return c;
}

void unrank_into(const std::vector<std::vector<std::uint64_t>>& counts, int k,
                 std::uint64_t index, DyckPath& out) {
    const int len = 2 * k;
    out.assign(static_cast<std::size_t>(len), 0);
    int h = 0;
    for (int pos = 0; pos < len; ++pos) {
        std::uint64_t up = 0;
        if (h + 1 <= len - pos - 1)
            up = counts[static_cast<std::size_t>(pos) + 1][static_cast<std::size_t>(h) + 1];
        if (index < up) {
            out[static_cast<std::size_t>(pos)] = +1;
            ++h;
        } else {
            index -= up;
            out[static_cast<std::size_t>(pos)] = -1;
            --h;
        }
    }
}

}  // namespace

bool is_valid(const DyckPath& p) {
    if (p.size() % 2 != 0) return false;
    int h = 0;
    for (int s : p) {
        if (s != 1 && s != -1) return false;
        h += s;
        if (h < 0) return false;
    }
    return h == 0;
}

std::uint64_t catalan(int k) {
    if (k < 0) throw std::invalid_argument("dyck: catalan requires k >= 0");
    return binomial(2 * k, k) / static_cast<std::uint64_t>(k + 1);
}

std::vector<DyckPath> enumerate_dyck(int k) {
    if (k < 0) throw std::invalid_argument("dyck: path length must be >= 0");
    if (k > kEnumerationBound)
        throw std::length_error("dyck: enumeration bounded at k <= 12");
    std::vector<DyckPath> out;
    out.reserve(static_cast<std::size_t>(catalan(k)));
    DyckPath p;
    build_paths(p, 0, 2 * k, out);
    return out;
}

const char* to_string(VertexClass c) {
    switch (c) {
        case VertexClass::absent: return "absent";
        case VertexClass::rise_fall: return "I";
        case VertexClass::fall_rise: return "II";
        case VertexClass::rise_rise: return "III";
        case VertexClass::fall_fall: return "IV";
    }
    return "?";
}

VertexClass classify_vertex(const DyckPath& p, int i, int j) {
    const int k = static_cast<int>(p.size()) / 2;
    if (!(0 <= i && i < j && j <= k))
        throw std::invalid_argument("dyck: vertex index out of range");
    const int pos = j + i, q = j - i;
    int h = 0;
    for (int s = 0; s < pos; ++s) h += p[static_cast<std::size_t>(s)];
    if (h != q) return VertexClass::absent;
    const int in = p[static_cast<std::size_t>(pos - 1)];
    const int out = p[static_cast<std::size_t>(pos)];
    if (in == +1) return out == -1 ? VertexClass::rise_fall : VertexClass::rise_rise;
    return out == +1 ? VertexClass::fall_rise : VertexClass::fall_fall;
}

cplx path_weight(const DyckPath& p, const schur::SchurParameterTable& params,
                 int l, int m) {
    if (!(0 <= l && l < m))
        throw std::invalid_argument("dyck: path_weight requires 0 <= l < m");
    if (m > params.size())
        throw std::invalid_argument("dyck: parameter table does not cover [l, m]");
    const int len = 2 * (m - l);
    if (static_cast<int>(p.size()) != len)
        throw std::invalid_argument("dyck: path length must be 2(m-l)");
    // Every lattice point of positive height visited by the path contributes
    // one factor; absent vertices contribute 1 and are skipped.
    cplx w = 1.0;
    int h = 0;
    for (int pos = 1; pos < len; ++pos) {
        h += p[static_cast<std::size_t>(pos - 1)];
        if (h == 0) continue;
        const int i = l + (pos - h) / 2;
        const int j = l + (pos + h) / 2;
        const int in = p[static_cast<std::size_t>(pos - 1)];
        const int out = p[static_cast<std::size_t>(pos)];
        if (in == +1 && out == -1)
            w *= params.gamma(i, j);
        else if (in == -1 && out == +1)
            w *= -std::conj(params.gamma(i, j));
        else
            w *= params.defect(i, j);
    }
    return w;
}

cplx kernel_by_dyck_sum_serial(const schur::SchurParameterTable& params, int l, int m) {
    if (!(0 <= l && l < m))
        throw std::invalid_argument("dyck: sum requires 0 <= l < m");
    if (m - l > kEnumerationBound)
        throw std::length_error("dyck: sum bounded at m - l <= 12");
    cplx total = 0.0;
    for (const auto& p : enumerate_dyck(m - l)) total += path_weight(p, params, l, m);
    return total;
}

DyckPath unrank_dyck(int k, std::uint64_t index) {
    if (k < 0) throw std::invalid_argument("dyck: path length must be >= 0");
    if (k > kEnumerationBound)
        throw std::length_error("dyck: unranking bounded at k <= 12");
    if (index >= catalan(k)) throw std::invalid_argument("dyck: path index out of range");
    const auto counts = ballot_table(k);
    DyckPath p;
    unrank_into(counts, k, index, p);
    return p;
}

cplx kernel_by_dyck_sum(const schur::SchurParameterTable& params, int l, int m) {
    if (!(0 <= l && l < m))
        throw std::invalid_argument("dyck: sum requires 0 <= l < m");
    if (m - l > kEnumerationBound)
        throw std::length_error("dyck: sum bounded at m - l <= 12");
    const int k = m - l;
    const auto counts = ballot_table(k);
    const auto count = static_cast<std::int64_t>(catalan(k));
    // Fixed chunk decomposition with per-chunk unranking: each chunk
    // generates its own paths and the partial sums are combined in chunk
    // order, so the value does not depend on the thread count.
    constexpr std::int64_t kChunks = 256;
    const std::int64_t chunks = std::min<std::int64_t>(kChunks, std::max<std::int64_t>(count, 1));
    std::vector<cplx> partial(static_cast<std::size_t>(chunks), cplx(0.0, 0.0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = count * c / chunks;
        const std::int64_t hi = count * (c + 1) / chunks;
        DyckPath p;
        cplx s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) {
            unrank_into(counts, k, static_cast<std::uint64_t>(i), p);
            s += path_weight(p, params, l, m);
        }
        partial[static_cast<std::size_t>(c)] = s;
    }
    cplx total = 0.0;
    for (const cplx& s : partial) total += s;
    return total;
}

std::uint64_t seismic_count(int n) {
    if (n < 0) throw std::invalid_argument("dyck: seismic count requires n >= 0");
    return catalan(n);
}

std::uint64_t seismic_count_enumerated(int n) {
    if (n < 0) throw std::invalid_argument("dyck: seismic count requires n >= 0");
    if (n > kEnumerationBound)
        throw std::length_error("dyck: trajectory enumeration bounded at n <= 12");
    return count_return_trajectories(0, 2 * n);
}

}  // namespace freekernel::dyck
