#pragma once

#include <cstdint>
#include <vector>

#include "freekernel/schur.hpp"

namespace freekernel::dyck {

using kmatrix::cplx;

/// +1/-1 steps; partial sums stay >= 0 and the total is 0.
using DyckPath = std::vector<int>;

bool is_valid(const DyckPath& p);

/// Exact Catalan number via the binomial formula; throws on 64-bit overflow.
std::uint64_t catalan(int k);

/// All Dyck paths of length 2k in lexicographic step order (+1 before -1).
/// Bounded at k <= 12.
std::vector<DyckPath> enumerate_dyck(int k);

/// The path at a given position of the enumerate_dyck order, computed from
/// ballot counts without enumerating. index < catalan(k).
DyckPath unrank_dyck(int k, std::uint64_t index);

/// Behaviour of a path at the lattice point (j+i, j-i), 0 <= i < j <= k.
enum class VertexClass {
    absent,     // point not on the path
    rise_fall,  // peak
    fall_rise,  // valley
    rise_rise,  // interior of an ascent
    fall_fall,  // interior of a descent
};

const char* to_string(VertexClass c);

VertexClass classify_vertex(const DyckPath& p, int i, int j);

/// Product of the vertex weights a_{i,j} over l <= i < j <= m for a path of
/// length 2(m-l) viewed as starting at (2l, 0): absent -> 1, peak ->
/// gamma_{i,j}, valley -> -conj(gamma_{i,j}), ascent/descent -> d_{i,j}.
cplx path_weight(const DyckPath& p, const schur::SchurParameterTable& params,
                 int l, int m);

/// Cumulant-type sum of path_weight over all Dyck paths of length 2(m-l);
/// equals the unit-diagonal transmission-line entry. OpenMP-parallel with a
/// fixed chunk decomposition, so the result is bitwise reproducible
/// regardless of thread count. m - l <= 12.
cplx kernel_by_dyck_sum(const schur::SchurParameterTable& params, int l, int m);

/// Serial reference implementation, kept for testing and benchmarking.
cplx kernel_by_dyck_sum_serial(const schur::SchurParameterTable& params, int l, int m);

/// Number of trajectories through a layered medium with perfect reflection
/// at interface 0 that return to it in 2n units of time: catalan(n).
std::uint64_t seismic_count(int n);

/// Independent oracle: counts the trajectories by direct enumeration of
/// down/up moves. Exponential; bounded at n <= 12.
std::uint64_t seismic_count_enumerated(int n);

}  // namespace freekernel::dyck
