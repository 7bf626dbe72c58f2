#pragma once

// Finite colorings as explicit tables over canonically indexed domains.

#include "dualramsey/cantor.hpp"
#include "dualramsey/order_core.hpp"
#include "dualramsey/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dualramsey {

using Color = std::uint32_t;

enum class DomainKind {
    RSurj,        // RSurj(M, L)
    Map,          // Map(M, A)
    Family,       // Map(A, 2^m)
    Emb,          // Emb(n, 2^m) under lex: increasing n-tuples
    Substructure, // Emb(S, 2^m) for a finite substructure S of one of the structures
};

/// A finite domain of maps or point families with a fixed element order:
/// lexicographic image sequences for maps, family rank for families.
class Domain {
public:
    static Domain rsurj(std::size_t M, std::size_t L);
    static Domain map(std::size_t M, std::size_t A);
    static Domain family(std::size_t arity, std::size_t width);
    static Domain emb(std::size_t n, std::size_t m);
    static Domain substructure(Substructure sub, std::size_t m);

    DomainKind kind() const noexcept { return kind_; }
    std::uint64_t size() const noexcept { return size_; }
    bool holds_maps() const noexcept { return kind_ == DomainKind::RSurj || kind_ == DomainKind::Map; }

    // RSurj(M, L) and Map(M, A): dom_size = M, cod_size = L or A.
    // Family: arity, width. Emb: arity = n, width = m. Substructure: arity = |S|.
    std::size_t dom_size() const noexcept { return first_; }
    std::size_t cod_size() const noexcept { return second_; }
    std::size_t arity() const noexcept { return first_; }
    std::size_t width() const noexcept { return second_; }
    const std::optional<Substructure>& sub() const noexcept { return sub_; }
    /// The structure embeddings respect: Lex for Emb, the substructure's own otherwise.
    Structure structure() const;

    FiniteMap map_at(std::uint64_t index) const;
    PointFamily family_at(std::uint64_t index) const;
    std::optional<std::uint64_t> index_of(const FiniteMap& f) const;
    std::optional<std::uint64_t> index_of(const PointFamily& f) const;

    /// The same kind of domain with the size that `w` acts on replaced:
    /// M for map domains, the width for family domains.
    Domain resized(std::size_t new_size) const;
    /// The size a restricting map must have as its domain.
    std::size_t restrict_size() const noexcept { return holds_maps() ? first_ : second_; }

    std::string describe() const;

    friend bool operator==(const Domain& a, const Domain& b);

private:
    Domain(DomainKind kind, std::size_t first, std::size_t second);

    DomainKind kind_;
    std::size_t first_;
    std::size_t second_;
    std::uint64_t size_ = 0;
    std::optional<Substructure> sub_;
    std::shared_ptr<const RsurjIndexer> indexer_;
    // Family ranks of members, ascending (Emb and Substructure only).
    std::shared_ptr<const std::vector<std::uint64_t>> members_;
};

inline constexpr std::uint64_t max_domain_size = std::uint64_t{1} << 26;

/// A total assignment domain -> {0..k-1}.
class Coloring {
public:
    /// Throws std::invalid_argument unless the table covers the domain and
    /// every entry is below k.
    Coloring(Domain domain, std::uint32_t k, std::vector<Color> table);

    const Domain& domain() const noexcept { return domain_; }
    std::uint32_t k() const noexcept { return k_; }
    const std::vector<Color>& table() const noexcept { return table_; }

    Color at(std::uint64_t index) const { return table_.at(index); }
    /// Throws std::invalid_argument when the element is outside the domain.
    Color operator()(const FiniteMap& f) const;
    Color operator()(const PointFamily& f) const;

    /// Sorted distinct colors used.
    std::vector<Color> image() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    Domain domain_;
    std::uint32_t k_;
    std::vector<Color> table_;
};

Coloring constant_coloring(const Domain& domain, std::uint32_t k = 1, Color c = 0);

/// Color of each element drawn from mt19937_64(seed) modulo k, in index order.
Coloring random_coloring(const Domain& domain, std::uint32_t k, std::uint64_t seed);

/// Map(M, n) colored by the catalog index of the mapping type; k = t(n).
Coloring type_index_coloring(std::size_t M, std::size_t n);

/// Family-valued domains: color 1 when every point shares its first bit, else 0.
Coloring first_bits_coloring(const Domain& domain);

} // namespace dualramsey
