#pragma once

// Brute-force reference computations used only by the tests. Nothing here
// goes through the enumeration, ranking or search code it is checked against.

#include "dualramsey/cantor.hpp"
#include "dualramsey/coloring.hpp"
#include "dualramsey/order_core.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using dualramsey::Value;

// S(m, n) = n S(m-1, n) + S(m-1, n-1)
inline std::uint64_t stirling2(std::size_t m, std::size_t n) {
    std::vector<std::vector<std::uint64_t>> s(m + 1, std::vector<std::uint64_t>(n + 1, 0));
    s[0][0] = 1;
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
    return s[m][n];
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Every sequence of length m over {0..n-1}, odometer order (lexicographic).
inline std::vector<std::vector<Value>> all_sequences(std::size_t m, std::size_t n) {
    std::vector<std::vector<Value>> out;
    std::vector<Value> cur(m, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = m;
        while (i > 0 && cur[i - 1] + 1 == n) {
            cur[i - 1] = 0;
            --i;
        }
        if (i == 0)
            return out;
        ++cur[i - 1];
    }
}

// Surjective, and min f^{-1}(y1) < min f^{-1}(y2) whenever y1 < y2.
inline bool rigid_by_definition(const std::vector<Value>& images, std::size_t n) {
    for (std::size_t y1 = 0; y1 < n; ++y1) {
        auto first1 = std::find(images.begin(), images.end(), static_cast<Value>(y1));
        if (first1 == images.end())
            return false;
        for (std::size_t y2 = y1 + 1; y2 < n; ++y2) {
            auto first2 = std::find(images.begin(), images.end(), static_cast<Value>(y2));
            if (first2 != images.end() && first2 < first1)
                return false;
        }
    }
    return true;
}

inline std::vector<std::vector<Value>> rsurj_by_filter(std::size_t m, std::size_t n) {
    std::vector<std::vector<Value>> out;
    for (auto& s : all_sequences(m, n))
        if (rigid_by_definition(s, n))
            out.push_back(s);
    return out;
}

// Points as subsets of {0..m-1}.
inline std::set<std::size_t> as_set(const dualramsey::Point& p) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < p.width(); ++i)
        if (p.bit(i))
            s.insert(i);
    return s;
}

// A <=lex B iff A ⊆ B, or min(B \ A) < min(A \ B).
inline bool lex_leq_by_sets(const dualramsey::Point& x, const dualramsey::Point& y) {
    const auto a = as_set(x);
    const auto b = as_set(y);
    if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
        return true;
    if (std::includes(a.begin(), a.end(), b.begin(), b.end()))
        return false;
    std::vector<std::size_t> b_minus_a, a_minus_b;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(b_minus_a));
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(a_minus_b));
    return b_minus_a.front() < a_minus_b.front();
}

inline std::vector<Value> compose(const std::vector<Value>& outer, const std::vector<Value>& inner) {
    std::vector<Value> out(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        out[i] = outer[inner[i]];
    return out;
}

// Whether some rigid w : M -> N has a monochromatic cone, checking every w
// and every u by direct composition. `color_of` maps an image sequence of a
// rigid M -> L to its color. Returns the least such w.
template <class ColorOf>
std::optional<std::vector<Value>> least_witness(std::size_t M, std::size_t N, std::size_t L, ColorOf&& color_of) {
    const auto cone = rsurj_by_filter(N, L);
    for (const auto& w : rsurj_by_filter(M, N)) {
        std::set<dualramsey::Color> colors;
        for (const auto& u : cone)
            colors.insert(color_of(compose(u, w)));
        if (colors.size() == 1)
            return w;
    }
    return std::nullopt;
}

// Color of a rigid sequence under a coloring over RSurj(M, L), by linear
// search for the sequence in the oracle enumeration (which is lexicographic,
// as is the domain's index order).
struct RsurjTable {
    std::vector<std::vector<Value>> elements;
    explicit RsurjTable(std::size_t M, std::size_t L) : elements(rsurj_by_filter(M, L)) {}
    std::size_t index_of(const std::vector<Value>& s) const {
        return static_cast<std::size_t>(std::lower_bound(elements.begin(), elements.end(), s) - elements.begin());
    }
};

} // namespace oracle
