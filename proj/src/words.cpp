#include "freekernel/words.hpp"

#include <limits>
#include <stdexcept>

namespace freekernel::words {

namespace {

void check_alphabet(int N) {
    if (N < 1) throw std::invalid_argument("words: alphabet size must be >= 1");
}

void check_letters(const Word& w, int N) {
    for (int l : w)
        if (l < 1 || l > N)
            throw std::invalid_argument("words: invalid word, letter out of range 1.." +
                                        std::to_string(N));
}

[[noreturn]] void overflow() { throw std::overflow_error("words: rank exceeds 64 bits"); }

}  // namespace

std::uint64_t rank(const Word& w, int N) {
    check_alphabet(N);
    check_letters(w, N);
    const auto n = static_cast<std::uint64_t>(N);
    // count of strictly shorter words, then the base-N offset within length |w|
    std::uint64_t below = 0, power = 1, offset = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (__builtin_add_overflow(below, power, &below)) overflow();
        if (__builtin_mul_overflow(power, n, &power)) overflow();
        std::uint64_t digit = static_cast<std::uint64_t>(w[k] - 1);
        if (__builtin_mul_overflow(offset, n, &offset)) overflow();
        if (__builtin_add_overflow(offset, digit, &offset)) overflow();
    }
    if (__builtin_add_overflow(below, offset, &below)) overflow();
    return below;
}

Word unrank(std::uint64_t k, int N) {
    check_alphabet(N);
    const auto n = static_cast<std::uint64_t>(N);
    std::uint64_t count = 1;  // N^len
    std::size_t len = 0;
    while (k >= count) {
        k -= count;
        ++len;
        if (__builtin_mul_overflow(count, n, &count)) break;  // count > any k now
    }
    Word w(len);
    for (std::size_t pos = len; pos-- > 0;) {
        w[pos] = static_cast<int>(k % n) + 1;
        k /= n;
    }
    return w;
}

Word step_back(const Word& w, std::uint64_t l, int N) {
    const std::uint64_t r = rank(w, N);
    if (r < l) throw std::invalid_argument("words: step_back underflow, rank(w) < l");
    return unrank(r - l, N);
}

std::pair<Word, int> tail_split(const Word& w, std::uint64_t l, int N) {
    const std::uint64_t r = rank(w, N);
    if (r <= l) throw std::invalid_argument("words: tail_split requires rank(w) > l");
    Word u = unrank(r - l, N);
    const int p = u.back();
    u.pop_back();
    return {std::move(u), p};
}

std::vector<Word> enumerate(int N, int n) {
    check_alphabet(N);
    if (n < 0) throw std::invalid_argument("words: enumerate requires n >= 0");
    std::vector<Word> out;
    out.emplace_back();
    for (int len = 1; len <= n; ++len) {
        Word w(static_cast<std::size_t>(len), 1);
        while (true) {
            out.push_back(w);
            int pos = len - 1;
            while (pos >= 0 && w[static_cast<std::size_t>(pos)] == N) {
                w[static_cast<std::size_t>(pos)] = 1;
                --pos;
            }
            if (pos < 0) break;
            ++w[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

std::tuple<Word, Word, Word> strip_common_prefix(const Word& sigma, const Word& tau) {
    std::size_t p = 0;
    while (p < sigma.size() && p < tau.size() && sigma[p] == tau[p]) ++p;
    Word alpha(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(p));
    Word s(sigma.begin() + static_cast<std::ptrdiff_t>(p), sigma.end());
    Word t(tau.begin() + static_cast<std::ptrdiff_t>(p), tau.end());
    return {std::move(alpha), std::move(s), std::move(t)};
}

SignedWord free_reduce(const Word& left, const Word& right) {
    std::size_t p = 0;
    while (p < left.size() && p < right.size() && left[p] == right[p]) ++p;
    SignedWord out;
    auto push = [&out](int letter, int exponent) {
        if (!out.empty() && out.back().letter == letter) {
            out.back().exponent += exponent;
            if (out.back().exponent == 0) out.pop_back();
        } else {
            out.push_back({letter, exponent});
        }
    };
    for (std::size_t i = left.size(); i-- > p;) push(left[i], -1);
    for (std::size_t i = p; i < right.size(); ++i) push(right[i], +1);
    return out;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Word concat(const Word& left, const Word& right) {
    Word out = left;
    out.insert(out.end(), right.begin(), right.end());
    return out;
}

}  // namespace freekernel::words
