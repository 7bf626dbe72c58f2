#pragma once

// Finite Cantor approximations 2^m, the contravariant powerset functor, the
// transpose (2^A)^B -> (2^B)^A and the first-order structures carried by 2^m.

#include "dualramsey/order_core.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualramsey {

inline constexpr std::size_t max_point_width = 62;

/// An element of 2^m. Coordinate 0 is the most significant bit of `key()`,
/// so numeric order on keys is the lexicographic order on points.
class Point {
public:
    Point(std::size_t width, std::uint64_t key);
    static Point from_bits(std::span<const int> bits);
    /// Parses a bitstring such as "0101"; throws std::invalid_argument.
    static Point parse(std::string_view bits);

    std::size_t width() const noexcept { return width_; }
    std::uint64_t key() const noexcept { return key_; }
    bool bit(std::size_t i) const noexcept { return (key_ >> (width_ - 1 - i)) & 1U; }
    std::string to_string() const;

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::size_t width_;
    std::uint64_t key_;
};

Point bot(std::size_t m);
Point top(std::size_t m);

/// x ∘ h: bit i of the result is bit h(i) of x. As subsets, the preimage h^{-1}(x).
Point powerset_apply(const FiniteMap& h, const Point& x);

/// Throws std::invalid_argument on width mismatch for all binary operations.
std::strong_ordering lex_compare(const Point& x, const Point& y);
bool poset_leq(const Point& x, const Point& y);
bool graph_adjacent(const Point& x, const Point& y);
Point meet(const Point& x, const Point& y);
Point join(const Point& x, const Point& y);
Point complement(const Point& x);

/// An element of Map(A, 2^m) with A = {0..arity-1}.
class PointFamily {
public:
    PointFamily(std::size_t width, std::vector<Point> entries);

    std::size_t width() const noexcept { return width_; }
    std::size_t arity() const noexcept { return entries_.size(); }
    std::span<const Point> entries() const noexcept { return entries_; }
    const Point& operator[](std::size_t a) const { return entries_[a]; }

    friend bool operator==(const PointFamily&, const PointFamily&) = default;

private:
    std::size_t width_;
    std::vector<Point> entries_;
};

/// Families are ranked by reading entries in order as one bitstring.
std::uint64_t family_count(std::size_t arity, std::size_t width);
std::uint64_t family_rank(const PointFamily& f);
PointFamily family_unrank(std::size_t arity, std::size_t width, std::uint64_t index);

/// Φ(F)(a)(b) = F(b)(a). Applying it twice gives back F.
PointFamily transpose(const PointFamily& f);

/// P(h) ∘ F, entrywise preimage under h : M -> width(F).
PointFamily powerset_apply(const FiniteMap& h, const PointFamily& f);

/// F ∘ h for h : A' -> arity(F).
PointFamily reindex(const PointFamily& f, const FiniteMap& h);

/// A strictly lex-increasing tuple of points: an n-element subset of 2^m.
class LexTuple {
public:
    explicit LexTuple(PointFamily points);

    const PointFamily& family() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.arity(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

    friend bool operator==(const LexTuple&, const LexTuple&) = default;

private:
    PointFamily points_;
};

bool is_lex_increasing(const PointFamily& f);

/// All n-element subsets of 2^m as increasing tuples, in lexicographic order.
std::vector<LexTuple> enumerate_emb(std::size_t n, std::size_t m);

std::size_t check_width(const Point& x, const Point& y);

// ---------------------------------------------------------------------------
// Structures.

/// Lex is the linear order alone; the other eight are the poset, graph,
/// Boolean algebra and Boolean lattice, each alone and with lex added.
enum class Structure { Lex, Q, EQ, G, OG, B, EB, L, EL };

inline constexpr Structure all_structures[] = {Structure::Lex, Structure::Q,  Structure::EQ,
                                               Structure::G,   Structure::OG, Structure::B,
                                               Structure::EB,  Structure::L,  Structure::EL};

struct Signature {
    bool lex = false;
    bool poset = false;
    bool graph = false;
    bool lattice = false;     // meet and join
    bool complemented = false; // complement and the constants 0, 1
};

Signature signature(Structure s);
std::string_view structure_name(Structure s);
/// Throws std::invalid_argument for an unknown name.
Structure parse_structure(std::string_view name);

/// For every nonempty A ⊆ {0..m-1}: min h^{-1}(A) = min h^{-1}(min A).
bool check_claim1(const RigidSurjection& h);

/// Whether x -> x ∘ h is an injective map 2^m -> 2^M that preserves and
/// reflects the relations of `s` and commutes with its operations and
/// constants. `h` need not be rigid; m is capped at 12.
bool check_structure_embedding(const FiniteMap& h, Structure s);

/// A finite substructure of 2^w: a set of points closed under the operations
/// and constants of its structure, listed in lex order.
class Substructure {
public:
    /// Sorts and validates; throws std::invalid_argument on duplicates, mixed
    /// widths or missing closure.
    Substructure(Structure s, std::vector<Point> points);

    /// The n-element chain used for Emb(n, 2^m).
    static Substructure chain(std::size_t n);

    Structure structure() const noexcept { return structure_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t width() const noexcept { return points_.front().width(); }
    std::span<const Point> points() const noexcept { return points_; }

    friend bool operator==(const Substructure&, const Substructure&) = default;

private:
    std::optional<std::size_t> index_of(const Point& p) const;
    friend bool is_embedding(const Substructure&, const PointFamily&);

    Structure structure_;
    std::vector<Point> points_;
};

/// Whether a ↦ image[a] is a first-order embedding of `sub` into 2^width(image).
bool is_embedding(const Substructure& sub, const PointFamily& image);

/// Emb(sub, 2^m) in family-rank order.
std::vector<PointFamily> enumerate_embeddings(const Substructure& sub, std::size_t m);

} // namespace dualramsey
