#pragma once

// Exhaustive law checks over all instances up to given size caps. Each suite
// stops at the first counterexample.

#include <cstdint>
#include <optional>
#include <string>

namespace dualramsey::laws {

struct LawResult {
    std::string suite;
    std::uint64_t instances = 0;
    std::optional<std::string> counterexample;

    bool passed() const noexcept { return !counterexample; }
};

/// (g ∘ f)^∂ = f^∂ ∘ g^∂, closure of rigid surjections under composition and
/// f ∘ f^∂ = id, over all composable rigid pairs with domain size <= max.
LawResult functoriality(std::size_t max);

/// Φ(P(h) ∘ f) = Φ(f) ∘ h and Φ ∘ Φ = id, over all widths <= max_width, all
/// h : A -> A and all f in (2^A)^B.
LawResult transpose(std::size_t max_width);

/// The least-element claim and lex preservation for every rigid h : M' -> m'
/// with m' <= m and M' <= M.
LawResult claims(std::size_t m, std::size_t M);

/// x ↦ x ∘ h is an embedding of each structure (lex and the eight others)
/// for every rigid h : M' -> m' with m' <= m and M' <= M.
LawResult structures(std::size_t m, std::size_t M);

/// Type blocks partition Map(M', n'), each block is the set of rigid
/// surjections onto its type, and types are stable under restriction along
/// rigid maps; for M' <= M, n' <= n.
LawResult partition(std::size_t M, std::size_t n);

} // namespace dualramsey::laws
