#pragma once

// Rigid surjections between finite initial segments {0..n-1} of the naturals.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dualramsey {

using Value = std::uint32_t;

/// A total function {0..dom-1} -> {0..cod-1}, stored as its image sequence.
class FiniteMap {
public:
    /// Throws std::invalid_argument on zero sizes, a length mismatch or an
    /// out-of-range image.
    FiniteMap(std::size_t dom_size, std::size_t cod_size, std::vector<Value> images);

    static FiniteMap identity(std::size_t n);
    static FiniteMap constant(std::size_t dom_size, std::size_t cod_size, Value v);

    std::size_t dom_size() const noexcept { return images_.size(); }
    std::size_t cod_size() const noexcept { return cod_size_; }
    std::span<const Value> images() const noexcept { return images_; }
    Value operator()(std::size_t i) const { return images_[i]; }

    friend bool operator==(const FiniteMap&, const FiniteMap&) = default;
    // Lexicographic on image sequences, then by codomain size.
    friend std::strong_ordering operator<=>(const FiniteMap& a, const FiniteMap& b);

private:
    std::size_t cod_size_;
    std::vector<Value> images_;
};

/// A surjection whose fibre minima appear in codomain order.
class RigidSurjection {
public:
    /// Throws std::invalid_argument when `f` is not rigid.
    explicit RigidSurjection(FiniteMap f);

    static RigidSurjection identity(std::size_t n) { return RigidSurjection(FiniteMap::identity(n)); }

    const FiniteMap& map() const noexcept { return map_; }
    std::size_t dom_size() const noexcept { return map_.dom_size(); }
    std::size_t cod_size() const noexcept { return map_.cod_size(); }
    std::span<const Value> images() const noexcept { return map_.images(); }
    Value operator()(std::size_t i) const { return map_(i); }

    friend bool operator==(const RigidSurjection&, const RigidSurjection&) = default;
    friend std::strong_ordering operator<=>(const RigidSurjection& a, const RigidSurjection& b) {
        return a.map_ <=> b.map_;
    }

private:
    FiniteMap map_;
};

/// An order embedding {0..n-1} -> {0..N-1}.
class StrictlyIncreasingMap {
public:
    explicit StrictlyIncreasingMap(FiniteMap f);

    const FiniteMap& map() const noexcept { return map_; }
    std::span<const Value> images() const noexcept { return map_.images(); }
    Value operator()(std::size_t i) const { return map_(i); }

    friend bool operator==(const StrictlyIncreasingMap&, const StrictlyIncreasingMap&) = default;

private:
    FiniteMap map_;
};

bool is_rigid_surjection(const FiniteMap& f) noexcept;
bool is_rigid_prefix(std::span<const Value> images) noexcept;

/// Calls `visit` with the image sequence of every rigid surjection M -> N in
/// lexicographic order. The span is only valid during the call.
void for_each_rsurj(std::size_t M, std::size_t N, const std::function<void(std::span<const Value>)>& visit);

/// All rigid surjections M -> N in lexicographic order of image sequences.
/// Throws std::invalid_argument for zero sizes or N > M.
std::vector<RigidSurjection> enumerate_rsurj(std::size_t M, std::size_t N);

/// Lexicographically least rigid surjection M -> N: 0,...,0,1,2,...,N-1.
RigidSurjection least_rsurj(std::size_t M, std::size_t N);

/// outer ∘ inner. Throws std::invalid_argument unless inner.cod == outer.dom.
FiniteMap compose(const FiniteMap& outer, const FiniteMap& inner);
RigidSurjection compose(const RigidSurjection& outer, const RigidSurjection& inner);

/// y -> least preimage of y.
StrictlyIncreasingMap derived_embedding(const RigidSurjection& f);

/// Ranking of rigid surjections M -> N in their lexicographic enumeration.
class RsurjIndexer {
public:
    RsurjIndexer(std::size_t M, std::size_t N);

    std::size_t dom_size() const noexcept { return M_; }
    std::size_t cod_size() const noexcept { return N_; }
    std::uint64_t count() const noexcept { return completions(M_, 0); }

    /// Position of `images` in lexicographic order. Precondition: rigid M -> N.
    std::uint64_t rank(std::span<const Value> images) const noexcept;
    /// Inverse of rank. Throws std::out_of_range past count().
    std::vector<Value> unrank(std::uint64_t index) const;

private:
    // Number of ways to fill `remaining` positions when `used` values have
    // already appeared, ending surjective onto N.
    std::uint64_t completions(std::size_t remaining, std::size_t used) const noexcept {
        return table_[remaining * (N_ + 1) + used];
    }

    std::size_t M_;
    std::size_t N_;
    std::vector<std::uint64_t> table_;
};

} // namespace dualramsey
