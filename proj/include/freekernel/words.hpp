#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

namespace freekernel::words {

/// A word over the alphabet {1,...,N}; the empty vector is the unit.
using Word = std::vector<int>;

/// One factor of a reduced free-group word: letter^exponent, exponent != 0.
struct SignedFactor {
    int letter;
    int exponent;
    bool operator==(const SignedFactor&) const = default;
};

/// Reduced word in the free group: adjacent factors carry distinct letters.
using SignedWord = std::vector<SignedFactor>;

/// Shortlex position of w among all words over {1..N}.
/// rank({}) = 0, rank({k}) = k, rank({1,1}) = N+1.
std::uint64_t rank(const Word& w, int N);

/// Inverse of rank: the word at shortlex position k.
Word unrank(std::uint64_t k, int N);

/// The word l shortlex positions before w. Throws if rank(w) < l.
Word step_back(const Word& w, std::uint64_t l, int N);

/// Splits step_back(w, l) as q.p with p a single letter.
/// Requires rank(w) > l so that the stepped-back word is nonempty.
std::pair<Word, int> tail_split(const Word& w, std::uint64_t l, int N);

/// All words of length <= n in shortlex order; size is sum of N^k, k=0..n.
std::vector<Word> enumerate(int N, int n);

/// (alpha, sigma', tau') with sigma = alpha.sigma', tau = alpha.tau' and
/// alpha the longest common prefix.
std::tuple<Word, Word, Word> strip_common_prefix(const Word& sigma, const Word& tau);

/// The reduced free-group word of left^{-1} . right.
SignedWord free_reduce(const Word& left, const Word& right);

bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

/// left.right concatenation.
Word concat(const Word& left, const Word& right);

}  // namespace freekernel::words
