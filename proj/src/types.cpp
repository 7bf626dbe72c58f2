#include "dualramsey/types.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace dualramsey {

MappingType::MappingType(std::size_t alphabet_size, std::vector<Value> letters)
    : alphabet_size_(alphabet_size), letters_(std::move(letters)) {
    if (alphabet_size_ == 0)
        throw std::invalid_argument("MappingType: empty alphabet");
    if (letters_.empty())
        throw std::invalid_argument("MappingType: empty word");
    std::vector<bool> seen(alphabet_size_, false);
    for (Value v : letters_) {
        if (v >= alphabet_size_)
            throw std::invalid_argument("MappingType: letter " + std::to_string(v) + " outside alphabet");
        if (seen[v])
            throw std::invalid_argument("MappingType: repeated letter " + std::to_string(v));
        seen[v] = true;
    }
}

FiniteMap MappingType::as_map() const { return FiniteMap(length(), alphabet_size_, letters_); }

std::strong_ordering operator<=>(const MappingType& a, const MappingType& b) {
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0)
        return c;
    if (auto c = std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                                        b.letters_.end());
        c != 0)
        return c;
    return a.alphabet_size_ <=> b.alphabet_size_;
}

MappingType mapping_type(const FiniteMap& f) {
    std::vector<bool> seen(f.cod_size(), false);
    std::vector<Value> letters;
    for (Value v : f.images())
        if (!seen[v]) {
            seen[v] = true;
            letters.push_back(v);
        }
    return MappingType(f.cod_size(), std::move(letters));
}

RigidSurjection type_coordinates(const FiniteMap& f) {
    constexpr Value unseen = std::numeric_limits<Value>::max();
    std::vector<Value> position(f.cod_size(), unseen);
    std::vector<Value> images(f.dom_size());
    Value next = 0;
    for (std::size_t i = 0; i < f.dom_size(); ++i) {
        Value& p = position[f(i)];
        if (p == unseen)
            p = next++;
        images[i] = p;
    }
    return RigidSurjection(FiniteMap(f.dom_size(), next, std::move(images)));
}

FiniteMap relabel(const MappingType& tp, const FiniteMap& u) { return compose(tp.as_map(), u); }

std::uint64_t type_bound(std::size_t n) {
    // n!/(n-i)! = n (n-1) ... (n-i+1)
    std::uint64_t total = 0;
    std::uint64_t falling = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        falling *= n - i + 1;
        total += falling;
    }
    return total;
}

std::optional<std::size_t> TypeCatalog::index_of(const MappingType& tp) const {
    auto it = std::lower_bound(types.begin(), types.end(), tp);
    if (it == types.end() || *it != tp)
        return std::nullopt;
    return static_cast<std::size_t>(it - types.begin());
}

namespace {

void words_dfs(std::size_t n, std::size_t length, std::vector<Value>& word, std::vector<bool>& used,
               std::vector<MappingType>& out) {
    if (word.size() == length) {
        out.emplace_back(n, word);
        return;
    }
    for (Value v = 0; v < n; ++v) {
        if (used[v])
            continue;
        used[v] = true;
        word.push_back(v);
        words_dfs(n, length, word, used, out);
        word.pop_back();
        used[v] = false;
    }
}

} // namespace

TypeCatalog enumerate_types(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("enumerate_types: alphabet must be nonempty");
    if (n > 9)
        throw std::invalid_argument("enumerate_types: alphabet above 9 letters is too large to enumerate");
    TypeCatalog catalog{n, {}};
    std::vector<Value> word;
    std::vector<bool> used(n, false);
    for (std::size_t len = 1; len <= n; ++len)
        words_dfs(n, len, word, used, catalog.types);
    return catalog;
}

std::uint64_t map_count(std::size_t M, std::size_t A) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < M; ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / A)
            throw std::invalid_argument("map_count: |A|^M overflows");
        count *= A;
    }
    return count;
}

std::uint64_t map_rank(const FiniteMap& f) {
    std::uint64_t r = 0;
    for (Value v : f.images())
        r = r * f.cod_size() + v;
    return r;
}

FiniteMap map_unrank(std::size_t M, std::size_t A, std::uint64_t index) {
    std::vector<Value> images(M);
    for (std::size_t i = M; i-- > 0;) {
        images[i] = static_cast<Value>(index % A);
        index /= A;
    }
    return FiniteMap(M, A, std::move(images));
}

const std::vector<FiniteMap>& TypePartition::block(const MappingType& tp) const {
    auto idx = catalog.index_of(tp);
    if (!idx)
        throw std::invalid_argument("TypePartition: type not in catalog");
    return blocks[*idx];
}

TypePartition partition_by_type(std::size_t M, std::size_t n) {
    if (M == 0)
        throw std::invalid_argument("partition_by_type: domain must be nonempty");
    TypePartition p{enumerate_types(n), M, {}};
    p.blocks.resize(p.catalog.size());
    const std::uint64_t total = map_count(M, n);
    for (std::uint64_t i = 0; i < total; ++i) {
        FiniteMap f = map_unrank(M, n, i);
        p.blocks[*p.catalog.index_of(mapping_type(f))].push_back(std::move(f));
    }
    return p;
}

} // namespace dualramsey
