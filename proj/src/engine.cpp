#include "dualramsey/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace dualramsey {

namespace {

// Every rigid surjection M -> L as a path from the root; each node carries the
// union of the colors of the leaves below it.
class ConeTrie {
public:
    explicit ConeTrie(const Coloring& gamma)
        : letters_(gamma.domain().cod_size()), words_((gamma.k() + 63) / 64) {
        add_node();
        std::uint64_t index = 0;
        for_each_rsurj(gamma.domain().dom_size(), letters_, [&](std::span<const Value> images) {
            const Color c = gamma.at(index++);
            std::int32_t node = 0;
            set_color(node, c);
            for (Value v : images) {
                std::int32_t next = child_[static_cast<std::size_t>(node) * letters_ + v];
                if (next < 0) {
                    next = add_node();
                    child_[static_cast<std::size_t>(node) * letters_ + v] = next;
                }
                node = next;
                set_color(node, c);
            }
        });
    }

    std::size_t words() const noexcept { return words_; }
    std::int32_t child(std::int32_t node, Value letter) const noexcept {
        return child_[static_cast<std::size_t>(node) * letters_ + letter];
    }
    const std::uint64_t* mask(std::int32_t node) const noexcept {
        return &mask_[static_cast<std::size_t>(node) * words_];
    }

private:
    std::int32_t add_node() {
        child_.resize(child_.size() + letters_, -1);
        mask_.resize(mask_.size() + words_, 0);
        return static_cast<std::int32_t>(child_.size() / letters_ - 1);
    }
    void set_color(std::int32_t node, Color c) {
        mask_[static_cast<std::size_t>(node) * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
    }

    std::size_t letters_;
    std::size_t words_;
    std::vector<std::int32_t> child_;
    std::vector<std::uint64_t> mask_;
};

// Depth-first search over rigid w : M -> N in lexicographic order. Each u in
// RSurj(N, L) tracks the trie node of the prefix of u ∘ w; a prefix is pruned
// once the colors still reachable for the different u are disjoint.
class WitnessSearch {
public:
    struct Frontier {
        std::vector<Value> prefix;
        std::size_t used = 0;
        std::uint64_t preorder = 0; // nodes visited up to and including this one
    };

    struct Outcome {
        bool found = false;
        bool aborted = false;
        std::vector<Value> w;
        Color color = 0;
        std::uint64_t nodes = 0;
    };

    WitnessSearch(const ConeTrie& trie, std::size_t M, std::size_t N, std::size_t L)
        : trie_(trie), M_(M), N_(N) {
        for_each_rsurj(N, L, [&](std::span<const Value> u) { cone_.emplace_back(u.begin(), u.end()); });
    }

    Outcome run(std::span<const Value> prefix, std::size_t used, const std::function<bool()>& stop) const {
        State s = fresh_state();
        s.stop = &stop;
        for (std::size_t p = 0; p < prefix.size(); ++p) {
            extend(s, p, prefix[p]);
            s.w[p] = prefix[p];
        }
        Outcome out;
        descend(s, prefix.size(), used, M_, [&](State& st, std::size_t) {
            out.found = true;
            out.w = st.w;
            out.color = leaf_color(st);
            return true;
        });
        out.aborted = s.aborted;
        out.nodes = s.nodes;
        return out;
    }

    std::vector<Frontier> frontier(std::size_t depth, std::uint64_t& nodes) const {
        State s = fresh_state();
        std::vector<Frontier> out;
        descend(s, 0, 0, depth, [&](State& st, std::size_t used) {
            out.push_back({std::vector<Value>(st.w.begin(), st.w.begin() + static_cast<std::ptrdiff_t>(depth)), used,
                           st.nodes});
            return false;
        });
        nodes = s.nodes;
        return out;
    }

private:
    struct State {
        std::vector<std::int32_t> levels; // (M + 1) x |cone|
        std::vector<std::uint64_t> acc;
        std::vector<Value> w;
        std::uint64_t nodes = 0;
        bool aborted = false;
        const std::function<bool()>* stop = nullptr;
    };

    State fresh_state() const {
        State s;
        s.levels.assign((M_ + 1) * cone_.size(), 0);
        s.acc.assign(trie_.words(), 0);
        s.w.assign(M_, 0);
        return s;
    }

    bool extend(State& s, std::size_t p, Value v) const {
        const std::size_t U = cone_.size();
        std::fill(s.acc.begin(), s.acc.end(), ~std::uint64_t{0});
        for (std::size_t j = 0; j < U; ++j) {
            const std::int32_t node = trie_.child(s.levels[p * U + j], cone_[j][v]);
            s.levels[(p + 1) * U + j] = node;
            const std::uint64_t* m = trie_.mask(node);
            bool any = false;
            for (std::size_t i = 0; i < s.acc.size(); ++i) {
                s.acc[i] &= m[i];
                any = any || s.acc[i] != 0;
            }
            if (!any)
                return false;
        }
        return true;
    }

    Color leaf_color(const State& s) const {
        const std::uint64_t* m = trie_.mask(s.levels[M_ * cone_.size()]);
        for (std::size_t i = 0; i < trie_.words(); ++i)
            if (m[i] != 0)
                return static_cast<Color>(i * 64 + static_cast<std::size_t>(std::countr_zero(m[i])));
        return 0;
    }

    template <class AtTarget>
    bool descend(State& s, std::size_t p, std::size_t used, std::size_t target, AtTarget&& at_target) const {
        if (p == target)
            return at_target(s, used);
        auto try_value = [&](Value v, std::size_t next_used) {
            if (s.stop != nullptr && (*s.stop)()) {
                s.aborted = true;
                return true;
            }
            ++s.nodes;
            if (!extend(s, p, v))
                return false;
            s.w[p] = v;
            return descend(s, p + 1, next_used, target, at_target);
        };
        // Old values are allowed only while enough slots remain for the new ones.
        if (N_ - used < M_ - p)
            for (std::size_t v = 0; v < used; ++v)
                if (try_value(static_cast<Value>(v), used))
                    return true;
        if (used < N_ && try_value(static_cast<Value>(used), used + 1))
            return true;
        return false;
    }

    const ConeTrie& trie_;
    std::size_t M_;
    std::size_t N_;
    std::vector<std::vector<Value>> cone_;
};

WitnessReport report_from(const WitnessSearch::Outcome& o, std::size_t M, std::size_t N, std::uint64_t nodes) {
    WitnessReport r;
    r.found = o.found;
    r.nodes_explored = nodes;
    if (o.found) {
        r.witness = RigidSurjection(FiniteMap(M, N, o.w));
        r.achieved_colors = {o.color};
    }
    return r;
}

WitnessReport parallel_search(const WitnessSearch& search, std::size_t M, std::size_t N, unsigned threads) {
    // Split at the shallowest depth that yields enough branches. The node
    // count is reassembled in sequential preorder, so it matches a
    // single-threaded run exactly.
    std::size_t depth = 1;
    std::uint64_t prefix_nodes = 0;
    std::vector<WitnessSearch::Frontier> branches = search.frontier(depth, prefix_nodes);
    while (branches.size() < 4 * static_cast<std::size_t>(threads) && depth + 1 < M) {
        ++depth;
        branches = search.frontier(depth, prefix_nodes);
    }

    std::vector<WitnessSearch::Outcome> outcomes(branches.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= branches.size() || i > best.load())
                return;
            const std::function<bool()> stop = [&best, i] { return best.load(std::memory_order_relaxed) < i; };
            outcomes[i] = search.run(branches[i].prefix, branches[i].used, stop);
            if (outcomes[i].found) {
                std::size_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    std::uint64_t nodes = 0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (outcomes[i].found) {
            nodes += branches[i].preorder + outcomes[i].nodes;
            return report_from(outcomes[i], M, N, nodes);
        }
        nodes += outcomes[i].nodes;
    }
    return report_from({}, M, N, nodes + prefix_nodes);
}

FiniteMap pull_back_map(const FiniteMap& x, const FiniteMap& w) { return compose(x, w); }

bool same_shape(const Domain& small, const Domain& big) {
    if (small.kind() != big.kind())
        return false;
    if (small.holds_maps())
        return small.cod_size() == big.cod_size();
    return small.arity() == big.arity() && small.sub() == big.sub();
}

std::vector<Color> sorted_colors(std::vector<bool> seen) {
    std::vector<Color> out;
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (seen[c])
            out.push_back(static_cast<Color>(c));
    return out;
}

} // namespace

PipelineConfig default_pipeline_config(std::size_t M0, std::size_t n) {
    if (M0 == 0 || n == 0)
        throw std::invalid_argument("default_pipeline_config: sizes must be positive");
    const std::uint64_t t = type_bound(n);
    const std::size_t target = std::min(M0, n);
    const std::uint64_t drop = M0 - target;
    PipelineConfig config;
    for (std::uint64_t j = 0; j <= t; ++j)
        config.size_schedule.push_back(M0 - static_cast<std::size_t>((2 * j * drop + t) / (2 * t)));
    for (std::uint64_t j = 0; j < t; ++j)
        config.type_order.push_back(static_cast<std::size_t>(j));
    return config;
}

void validate_config(const PipelineConfig& config, std::size_t M0, std::size_t n) {
    const std::uint64_t t = type_bound(n);
    const auto& sched = config.size_schedule;
    if (sched.size() != t + 1)
        throw std::invalid_argument("pipeline: size schedule has " + std::to_string(sched.size()) +
                                    " entries, expected t + 1 = " + std::to_string(t + 1));
    if (sched.front() != M0)
        throw std::invalid_argument("pipeline: schedule starts at " + std::to_string(sched.front()) +
                                    " but the coloring lives on Map(" + std::to_string(M0) + ", A)");
    for (std::size_t j = 0; j < sched.size(); ++j) {
        if (sched[j] == 0)
            throw std::invalid_argument("pipeline: schedule sizes must be positive");
        if (j > 0 && sched[j] > sched[j - 1])
            throw std::invalid_argument("pipeline: schedule must be non-increasing");
    }
    if (config.type_order.size() != t)
        throw std::invalid_argument("pipeline: type order has " + std::to_string(config.type_order.size()) +
                                    " entries, expected t = " + std::to_string(t));
    std::vector<bool> seen(t, false);
    for (std::size_t i : config.type_order) {
        if (i >= t || seen[i])
            throw std::invalid_argument("pipeline: type order is not a permutation of the catalog");
        seen[i] = true;
    }
}

Coloring restrict_coloring(const Coloring& gamma, const RigidSurjection& w) {
    const Domain& big = gamma.domain();
    if (w.dom_size() != big.restrict_size())
        throw std::invalid_argument("restrict_coloring: witness domain " + std::to_string(w.dom_size()) +
                                    " does not act on " + big.describe());
    if (big.kind() == DomainKind::RSurj && w.cod_size() < big.cod_size())
        throw std::invalid_argument("restrict_coloring: RSurj(" + std::to_string(w.cod_size()) + ", " +
                                    std::to_string(big.cod_size()) + ") is empty");
    const Domain small = big.resized(w.cod_size());
    std::vector<Color> table(small.size());
    for (std::uint64_t i = 0; i < small.size(); ++i)
        table[i] = small.holds_maps() ? gamma(pull_back_map(small.map_at(i), w.map()))
                                      : gamma(powerset_apply(w.map(), small.family_at(i)));
    return Coloring(small, gamma.k(), std::move(table));
}

WitnessReport dual_ramsey_search(const Coloring& gamma, std::size_t N, const SearchOptions& options) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::RSurj)
        throw std::invalid_argument("dual_ramsey_search: coloring must be over RSurj(M, L), got " + d.describe());
    const std::size_t M = d.dom_size();
    const std::size_t L = d.cod_size();
    if (N < L || N > M)
        throw std::invalid_argument("dual_ramsey_search: need L <= N <= M (L=" + std::to_string(L) +
                                    ", N=" + std::to_string(N) + ", M=" + std::to_string(M) + ")");
    const ConeTrie trie(gamma);
    const WitnessSearch search(trie, M, N, L);
    if (options.threads > 1 && M > 1)
        return parallel_search(search, M, N, options.threads);
    const std::function<bool()> never = [] { return false; };
    const auto outcome = search.run({}, 0, never);
    return report_from(outcome, M, N, outcome.nodes);
}

WitnessReport color_reduction_pipeline(const Coloring& gamma, const PipelineConfig& config,
                                       const SearchOptions& options) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::Map)
        throw std::invalid_argument("color_reduction_pipeline: coloring must be over Map(M, A), got " + d.describe());
    const std::size_t M0 = d.dom_size();
    const std::size_t n = d.cod_size();
    validate_config(config, M0, n);
    const TypeCatalog catalog = enumerate_types(n);

    WitnessReport report;
    report.bound = catalog.size();
    // g_0 is the identity; h accumulates g_j ∘ ... ∘ g_1.
    RigidSurjection h = RigidSurjection::identity(M0);
    for (std::size_t j = 1; j <= catalog.size(); ++j) {
        const MappingType& tp = catalog.types[config.type_order[j - 1]];
        const std::size_t from = config.size_schedule[j - 1];
        const std::size_t to = config.size_schedule[j];
        StageRecord rec{j, tp, from, to, StageStatus::Vacuous, std::nullopt, std::nullopt, 0};

        if (tp.length() > to) {
            rec.witness = least_rsurj(from, to);
        } else {
            const Coloring stage = restrict_coloring(gamma, h);
            const Domain block = Domain::rsurj(from, tp.length());
            std::vector<Color> table(block.size());
            for (std::uint64_t i = 0; i < block.size(); ++i)
                table[i] = stage(relabel(tp, block.map_at(i)));
            const WitnessReport found = dual_ramsey_search(Coloring(block, gamma.k(), std::move(table)), to, options);
            rec.nodes_explored = found.nodes_explored;
            report.nodes_explored += found.nodes_explored;
            if (!found.found) {
                rec.status = StageStatus::Exhausted;
                report.stage_log.push_back(std::move(rec));
                report.failed_stage = j;
                return report;
            }
            rec.status = StageStatus::Found;
            rec.witness = found.witness;
            rec.color = found.achieved_colors.front();
        }
        h = compose(*rec.witness, h);
        report.stage_log.push_back(std::move(rec));
    }
    report.found = true;
    report.achieved_colors = verify_witness(gamma, h.map(), Domain::map(h.cod_size(), n));
    report.witness = std::move(h);
    return report;
}

Coloring transpose_reduction(const Coloring& gamma) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::Family)
        throw std::invalid_argument("transpose_reduction: coloring must be over Map(A, 2^m), got " + d.describe());
    const Domain swapped = Domain::family(d.width(), d.arity());
    std::vector<Color> table(swapped.size());
    for (std::uint64_t i = 0; i < swapped.size(); ++i)
        table[i] = gamma(transpose(swapped.family_at(i)));
    return Coloring(swapped, gamma.k(), std::move(table));
}

Coloring family_as_map(const Coloring& gamma) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::Family)
        throw std::invalid_argument("family_as_map: coloring must be over a family domain, got " + d.describe());
    if (d.width() > 16)
        throw std::invalid_argument("family_as_map: alphabet 2^width too large");
    return Coloring(Domain::map(d.arity(), std::size_t{1} << d.width()), gamma.k(), gamma.table());
}

Coloring extend_embedding_coloring(const Coloring& gamma) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::Emb && d.kind() != DomainKind::Substructure)
        throw std::invalid_argument("extend_embedding_coloring: coloring must be over embeddings, got " + d.describe());
    const Domain all = Domain::family(d.arity(), d.width());
    std::vector<Color> table(all.size(), 0);
    for (std::uint64_t i = 0; i < d.size(); ++i)
        table[*all.index_of(d.family_at(i))] = gamma.at(i);
    return Coloring(all, gamma.k(), std::move(table));
}

std::vector<Color> verify_witness(const Coloring& gamma, const FiniteMap& h, const Domain& family) {
    const Domain& big = gamma.domain();
    if (!same_shape(family, big) || h.dom_size() != big.restrict_size() || h.cod_size() != family.restrict_size())
        throw std::invalid_argument("verify_witness: " + family.describe() + " is not carried into " +
                                    big.describe() + " by a map " + std::to_string(h.dom_size()) + " -> " +
                                    std::to_string(h.cod_size()));
    std::vector<bool> seen(gamma.k(), false);
    for (std::uint64_t i = 0; i < family.size(); ++i) {
        std::optional<std::uint64_t> idx = family.holds_maps() ? big.index_of(compose(family.map_at(i), h))
                                                               : big.index_of(powerset_apply(h, family.family_at(i)));
        if (!idx)
            throw std::invalid_argument("verify_witness: the map does not carry " + family.describe() + " into " +
                                        big.describe());
        seen[gamma.at(*idx)] = true;
    }
    return sorted_colors(std::move(seen));
}

PipelineConfig default_structure_config(const Domain& embeddings) {
    if (embeddings.arity() > 3)
        throw std::invalid_argument("end-to-end runs support substructures of at most 3 points");
    return default_pipeline_config(embeddings.width(), std::size_t{1} << embeddings.arity());
}

StructureRunReport end_to_end_structure_run(const Coloring& gamma, const PipelineConfig& config,
                                            const SearchOptions& options) {
    const Domain& d = gamma.domain();
    if (d.kind() != DomainKind::Emb && d.kind() != DomainKind::Substructure)
        throw std::invalid_argument("end_to_end_structure_run: coloring must be over embeddings, got " + d.describe());
    if (d.arity() > 3)
        throw std::invalid_argument("end-to-end runs support substructures of at most 3 points");

    StructureRunReport out;
    out.structure = d.structure();
    out.alphabet_size = std::size_t{1} << d.arity();
    out.bound = type_bound(out.alphabet_size);

    const Coloring extended = extend_embedding_coloring(gamma);
    const Coloring reduced = family_as_map(transpose_reduction(extended));
    out.pipeline = color_reduction_pipeline(reduced, config, options);
    if (!out.pipeline.found)
        return out;

    const FiniteMap& h = out.pipeline.witness->map();
    out.embedding_certificate = check_structure_embedding(h, out.structure);
    out.extended_colors = verify_witness(extended, h, Domain::family(d.arity(), h.cod_size()));
    const Domain surviving = d.resized(h.cod_size());
    out.surviving_colors = surviving.size() == 0 ? std::vector<Color>{} : verify_witness(gamma, h, surviving);
    return out;
}

Coloring coloring_by_index(const Domain& domain, std::uint32_t k, std::uint64_t index) {
    std::vector<Color> table(domain.size());
    for (std::size_t e = table.size(); e-- > 0;) {
        table[e] = static_cast<Color>(index % k);
        index /= k;
    }
    return Coloring(domain, k, std::move(table));
}

DrNumberResult dr_number(std::size_t L, std::size_t N, std::uint32_t k, std::size_t max_M,
                         const SearchOptions& options) {
    if (L == 0 || N < L || k == 0)
        throw std::invalid_argument("dr_number: need 1 <= L <= N and k >= 1");
    DrNumberResult result{L, N, k, max_M, {}, std::nullopt};
    for (std::size_t M = N; M <= max_M; ++M) {
        const Domain domain = Domain::rsurj(M, L);
        std::uint64_t colorings = 1;
        for (std::uint64_t i = 0; i < domain.size(); ++i) {
            if (colorings > max_domain_size / k)
                throw std::invalid_argument("dr_number: k^|RSurj(" + std::to_string(M) + ", " + std::to_string(L) +
                                            ")| colorings is too many to exhaust");
            colorings *= k;
        }
        std::vector<char> has_witness(colorings, 0);
        auto scan = [&](std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t c = begin; c < end; ++c)
                has_witness[c] = dual_ramsey_search(coloring_by_index(domain, k, c), N).found ? 1 : 0;
        };
        const unsigned threads = std::max(1U, options.threads);
        if (threads == 1) {
            scan(0, colorings);
        } else {
            std::vector<std::thread> pool;
            const std::uint64_t chunk = (colorings + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::uint64_t begin = std::min(colorings, t * chunk);
                pool.emplace_back(scan, begin, std::min(colorings, begin + chunk));
            }
            for (auto& t : pool)
                t.join();
        }
        DrLevel level{M, colorings, 0, std::nullopt};
        for (std::uint64_t c = 0; c < colorings; ++c)
            if (!has_witness[c]) {
                ++level.without_witness;
                if (!level.first_counterexample)
                    level.first_counterexample = c;
            }
        result.levels.push_back(level);
        if (level.without_witness == 0 && !result.minimal_M)
            result.minimal_M = M;
    }
    return result;
}

} // namespace dualramsey
