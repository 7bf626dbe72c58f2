#include "dualramsey/laws.hpp"

#include "dualramsey/cantor.hpp"
#include "dualramsey/order_core.hpp"
#include "dualramsey/types.hpp"

#include <sstream>

namespace dualramsey::laws {

namespace {

std::string show(const FiniteMap& f) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < f.dom_size(); ++i)
        out << (i ? "," : "") << f(i);
    out << "] (" << f.dom_size() << "->" << f.cod_size() << ')';
    return out.str();
}

std::string show(const PointFamily& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.arity(); ++i)
        s += (i ? "," : "") + f[i].to_string();
    return s + "}";
}

// Every map A -> A, in lexicographic order.
template <class Fn>
void for_each_endomap(std::size_t a, Fn&& fn) {
    const std::uint64_t total = map_count(a, a);
    for (std::uint64_t i = 0; i < total; ++i)
        fn(map_unrank(a, a, i));
}

} // namespace

LawResult functoriality(std::size_t max) {
    LawResult r{"functoriality", 0, std::nullopt};
    for (std::size_t x = 1; x <= max; ++x)
        for (std::size_t y = 1; y <= x; ++y)
            for (const RigidSurjection& f : enumerate_rsurj(x, y)) {
                const FiniteMap round_trip = compose(f.map(), derived_embedding(f).map());
                if (round_trip != FiniteMap::identity(y)) {
                    r.counterexample = "f o f^d != id for f = " + show(f.map());
                    return r;
                }
                for (std::size_t z = 1; z <= y; ++z)
                    for (const RigidSurjection& g : enumerate_rsurj(y, z)) {
                        ++r.instances;
                        const FiniteMap gf = compose(g.map(), f.map());
                        if (!is_rigid_surjection(gf)) {
                            r.counterexample = "g o f not rigid for f = " + show(f.map()) + ", g = " + show(g.map());
                            return r;
                        }
                        const FiniteMap lhs = derived_embedding(RigidSurjection(gf)).map();
                        const FiniteMap rhs = compose(derived_embedding(f).map(), derived_embedding(g).map());
                        if (lhs != rhs) {
                            r.counterexample = "(g o f)^d != f^d o g^d for f = " + show(f.map()) + ", g = " +
                                               show(g.map());
                            return r;
                        }
                    }
            }
    return r;
}

LawResult transpose(std::size_t max_width) {
    LawResult r{"transpose", 0, std::nullopt};
    for (std::size_t a = 1; a <= max_width; ++a)
        for (std::size_t b = 1; b <= max_width; ++b) {
            // f : B -> 2^A
            const std::uint64_t families = family_count(b, a);
            for (std::uint64_t fi = 0; fi < families; ++fi) {
                const PointFamily f = family_unrank(b, a, fi);
                const PointFamily tf = dualramsey::transpose(f);
                if (dualramsey::transpose(tf) != f) {
                    r.counterexample = "transpose is not an involution on " + show(f);
                    return r;
                }
                for_each_endomap(a, [&](const FiniteMap& h) {
                    if (r.counterexample)
                        return;
                    ++r.instances;
                    if (dualramsey::transpose(powerset_apply(h, f)) != reindex(tf, h))
                        r.counterexample = "Phi(P(h) o f) != Phi(f) o h for h = " + show(h) + ", f = " + show(f);
                });
                if (r.counterexample)
                    return r;
            }
        }
    return r;
}

LawResult claims(std::size_t m, std::size_t M) {
    LawResult r{"claims", 0, std::nullopt};
    for (std::size_t cod = 1; cod <= m; ++cod)
        for (std::size_t dom = cod; dom <= M; ++dom)
            for (const RigidSurjection& h : enumerate_rsurj(dom, cod)) {
                ++r.instances;
                if (!check_claim1(h)) {
                    r.counterexample = "least-element claim fails for h = " + show(h.map());
                    return r;
                }
                if (!check_structure_embedding(h.map(), Structure::Lex)) {
                    r.counterexample = "P(h) does not preserve lex for h = " + show(h.map());
                    return r;
                }
            }
    return r;
}

LawResult structures(std::size_t m, std::size_t M) {
    LawResult r{"structures", 0, std::nullopt};
    for (std::size_t cod = 1; cod <= m; ++cod)
        for (std::size_t dom = cod; dom <= M; ++dom)
            for (const RigidSurjection& h : enumerate_rsurj(dom, cod))
                for (Structure s : all_structures) {
                    ++r.instances;
                    if (!check_structure_embedding(h.map(), s)) {
                        r.counterexample = "P(h) is not a " + std::string(structure_name(s)) +
                                           "-embedding for h = " + show(h.map());
                        return r;
                    }
                }
    return r;
}

LawResult partition(std::size_t M, std::size_t n) {
    LawResult r{"partition", 0, std::nullopt};
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t dom = 1; dom <= M; ++dom) {
            const TypePartition p = partition_by_type(dom, a);
            std::uint64_t total = 0;
            std::vector<bool> seen(map_count(dom, a), false);
            for (std::size_t b = 0; b < p.blocks.size(); ++b) {
                const MappingType& tp = p.catalog.types[b];
                for (const FiniteMap& f : p.blocks[b]) {
                    ++r.instances;
                    ++total;
                    const std::uint64_t idx = map_rank(f);
                    if (seen[idx]) {
                        r.counterexample = show(f) + " lies in two blocks";
                        return r;
                    }
                    seen[idx] = true;
                    if (mapping_type(f) != tp || relabel(tp, type_coordinates(f).map()) != f) {
                        r.counterexample = show(f) + " is not a rigid surjection onto its block's type";
                        return r;
                    }
                    for (std::size_t big = dom; big <= M; ++big)
                        for (const RigidSurjection& g : enumerate_rsurj(big, dom))
                            if (mapping_type(compose(f, g.map())) != tp) {
                                r.counterexample = "type of " + show(f) + " changes under restriction along " +
                                                   show(g.map());
                                return r;
                            }
                }
                if (tp.length() > dom && !p.blocks[b].empty()) {
                    r.counterexample = "type longer than the domain has members";
                    return r;
                }
            }
            if (total != map_count(dom, a)) {
                r.counterexample = "blocks of Map(" + std::to_string(dom) + ", " + std::to_string(a) +
                                   ") do not cover it";
                return r;
            }
        }
    return r;
}

} // namespace dualramsey::laws
