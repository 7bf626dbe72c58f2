#pragma once

// Finite dual-Ramsey witness search and the color-reduction pipeline built on
// top of it.
//
// Elements u of RSurj(N, L) are pulled back along a rigid surjection
// w : M -> N to u ∘ w in RSurj(M, L). A witness for a coloring of RSurj(M, L)
// is a w whose cone {u ∘ w : u in RSurj(N, L)} is monochromatic. Failure to
// find one is reported as a value: finite truncations are often too small.

#include "dualramsey/coloring.hpp"
#include "dualramsey/order_core.hpp"
#include "dualramsey/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dualramsey {

struct SearchOptions {
    /// Worker threads for the witness search; results do not depend on it.
    unsigned threads = 1;
};

enum class StageStatus {
    Found,     // the block's cone is monochromatic under the stage witness
    Vacuous,   // the type is longer than the target size, so its block is empty
    Exhausted, // no witness exists at this size
};

struct StageRecord {
    std::size_t stage = 0; // 1-based
    MappingType type;
    std::size_t from_size = 0;
    std::size_t to_size = 0;
    StageStatus status = StageStatus::Exhausted;
    std::optional<RigidSurjection> witness;
    std::optional<Color> color;
    std::uint64_t nodes_explored = 0;

    friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct WitnessReport {
    bool found = false;
    std::optional<RigidSurjection> witness;
    std::vector<Color> achieved_colors;
    std::uint64_t nodes_explored = 0;
    std::vector<StageRecord> stage_log;
    /// Pipeline only: the type bound t, and the stage that failed.
    std::optional<std::uint64_t> bound;
    std::optional<std::size_t> failed_stage;

    friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

struct PipelineConfig {
    /// M_0 >= M_1 >= ... >= M_t, with M_0 the coloring's domain size.
    std::vector<std::size_t> size_schedule;
    /// type_order[j] is the catalog index of the type handled at stage j+1.
    std::vector<std::size_t> type_order;
};

/// Catalog order, sizes decreasing linearly from M0 to min(M0, n).
PipelineConfig default_pipeline_config(std::size_t M0, std::size_t n);

/// Throws std::invalid_argument when the config does not fit Map(M0, n).
void validate_config(const PipelineConfig& config, std::size_t M0, std::size_t n);

/// x ↦ γ(x ∘ w): pulls a coloring back along w to the smaller domain.
/// For map domains x ∘ w is composition; for point-family domains it is
/// P(w) ∘ x. Throws std::invalid_argument on incomposable sizes.
Coloring restrict_coloring(const Coloring& gamma, const RigidSurjection& w);

/// Lexicographically least w in RSurj(M, N) whose cone is monochromatic
/// under γ over RSurj(M, L). Requires L <= N <= M.
WitnessReport dual_ramsey_search(const Coloring& gamma, std::size_t N, const SearchOptions& options = {});

/// Runs one stage per mapping type over γ on Map(M_0, A). On success the
/// witness is h = g_t ∘ ... ∘ g_1 : M_0 -> M_t and achieved_colors is the
/// exact color set of Map(M_t, A) ∘ h.
WitnessReport color_reduction_pipeline(const Coloring& gamma, const PipelineConfig& config,
                                       const SearchOptions& options = {});

/// γ*(F) = γ(Φ(F)): a coloring of Map(A, 2^m) becomes one of Map(m, 2^A).
Coloring transpose_reduction(const Coloring& gamma);

/// Reads a coloring of Map(m, 2^a) as one of Map(m, 2^a) with the letters of
/// the alphabet 2^a being points of width a (key order). The table is unchanged.
Coloring family_as_map(const Coloring& gamma);

/// γ' on Map(A, 2^m): agrees with γ on embeddings, 0 elsewhere.
Coloring extend_embedding_coloring(const Coloring& gamma);

/// The exact set {γ(x ∘ h) : x in family}, recomputed by enumeration.
std::vector<Color> verify_witness(const Coloring& gamma, const FiniteMap& h, const Domain& family);

struct StructureRunReport {
    Structure structure = Structure::Lex;
    std::size_t alphabet_size = 0; // 2^|A|
    std::uint64_t bound = 0;       // t(2^|A|)
    WitnessReport pipeline;
    /// On success: whether x ↦ x ∘ h embeds the structure into itself.
    std::optional<bool> embedding_certificate;
    /// On success: γ on g ∘ Emb(A, 2^{M_t}), and γ' on g ∘ Map(A, 2^{M_t}).
    std::vector<Color> surviving_colors;
    std::vector<Color> extended_colors;

    friend bool operator==(const StructureRunReport&, const StructureRunReport&) = default;
};

/// Extends γ off the embeddings, transposes, runs the pipeline and checks the
/// resulting g = P(h) against the structure.
StructureRunReport end_to_end_structure_run(const Coloring& gamma, const PipelineConfig& config,
                                            const SearchOptions& options = {});

/// Pipeline config for an end-to-end run: the defaults for Map(m, 2^|A|).
PipelineConfig default_structure_config(const Domain& embeddings);

struct DrLevel {
    std::size_t M = 0;
    std::uint64_t colorings = 0;
    std::uint64_t without_witness = 0;
    /// Least coloring index (base-k digits, element 0 most significant) with no witness.
    std::optional<std::uint64_t> first_counterexample;

    friend bool operator==(const DrLevel&, const DrLevel&) = default;
};

struct DrNumberResult {
    std::size_t L = 0;
    std::size_t N = 0;
    std::uint32_t k = 0;
    std::size_t max_M = 0;
    std::vector<DrLevel> levels;
    /// Least M <= max_M at which every k-coloring of RSurj(M, L) has a witness in RSurj(M, N).
    std::optional<std::size_t> minimal_M;

    friend bool operator==(const DrNumberResult&, const DrNumberResult&) = default;
};

/// The coloring of RSurj(M, L) numbered `index` in dr_number's enumeration.
Coloring coloring_by_index(const Domain& domain, std::uint32_t k, std::uint64_t index);

/// Exhausts all k-colorings of RSurj(M, L) for M = N..max_M.
DrNumberResult dr_number(std::size_t L, std::size_t N, std::uint32_t k, std::size_t max_M,
                         const SearchOptions& options = {});

} // namespace dualramsey
