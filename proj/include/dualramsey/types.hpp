#pragma once

// Mapping types: the word of values of f : M -> A in order of first
// occurrence. Every f is a rigid surjection onto its type read as a linear
// order, so types partition Map(M, A).

#include "dualramsey/order_core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dualramsey {

/// Nonempty word of distinct letters over the alphabet {0..n-1}.
class MappingType {
public:
    MappingType(std::size_t alphabet_size, std::vector<Value> letters);

    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    std::size_t length() const noexcept { return letters_.size(); }
    std::span<const Value> letters() const noexcept { return letters_; }
    Value operator[](std::size_t i) const { return letters_[i]; }

    /// The letter order as a map {0..length-1} -> A.
    FiniteMap as_map() const;

    friend bool operator==(const MappingType&, const MappingType&) = default;
    /// Catalog order: by length, then lexicographic.
    friend std::strong_ordering operator<=>(const MappingType& a, const MappingType& b);

private:
    std::size_t alphabet_size_;
    std::vector<Value> letters_;
};

MappingType mapping_type(const FiniteMap& f);

/// Reads f : M -> A in the letter order of its own type: the rigid
/// surjection M -> |tp(f)| with f = tp(f) ∘ result.
RigidSurjection type_coordinates(const FiniteMap& f);

/// tp ∘ u, i.e. the member of the tp-block whose type coordinates are u.
FiniteMap relabel(const MappingType& tp, const FiniteMap& u);

/// sum_{i=1..n} n!/(n-i)!
std::uint64_t type_bound(std::size_t n);

struct TypeCatalog {
    std::size_t alphabet_size = 0;
    std::vector<MappingType> types;

    std::size_t size() const noexcept { return types.size(); }
    std::optional<std::size_t> index_of(const MappingType& tp) const;
};

TypeCatalog enumerate_types(std::size_t n);

/// Map(M, A) in lexicographic order of image sequences; the index of f is its
/// image sequence read as a base-|A| numeral.
std::uint64_t map_count(std::size_t M, std::size_t A);
std::uint64_t map_rank(const FiniteMap& f);
FiniteMap map_unrank(std::size_t M, std::size_t A, std::uint64_t index);

struct TypePartition {
    TypeCatalog catalog;
    std::size_t dom_size = 0;
    /// blocks[i] lists the members of catalog.types[i] in lexicographic order.
    std::vector<std::vector<FiniteMap>> blocks;

    const std::vector<FiniteMap>& block(const MappingType& tp) const;
};

TypePartition partition_by_type(std::size_t M, std::size_t n);

} // namespace dualramsey
