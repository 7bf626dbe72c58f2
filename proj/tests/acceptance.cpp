// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include "dualramsey/engine.hpp"
#include "dualramsey/manifest.hpp"
#include "dualramsey/serialize.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>

using namespace dualramsey;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs > limit_seconds) {
        o.ok = false;
        o.detail += " [over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit]";
    }
    if (!o.ok)
        ++failures;
    std::printf("criterion %2d: %s  %s: %s (%.2f s)\n", id, o.ok ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::vector<Value> images_of(const FiniteMap& f) { return {f.images().begin(), f.images().end()}; }

// Least preimage of each codomain point, computed directly.
std::vector<Value> least_preimages(const std::vector<Value>& f, std::size_t n) {
    std::vector<Value> out(n);
    for (std::size_t y = 0; y < n; ++y)
        out[y] = static_cast<Value>(std::find(f.begin(), f.end(), static_cast<Value>(y)) - f.begin());
    return out;
}

std::vector<Value> first_occurrence_word(const std::vector<Value>& f) {
    std::vector<Value> word;
    for (Value v : f)
        if (std::find(word.begin(), word.end(), v) == word.end())
            word.push_back(v);
    return word;
}

// Index of x in Map(M, A) read as a base-A numeral, first coordinate most significant.
std::uint64_t numeral(const std::vector<Value>& x, std::size_t A) {
    std::uint64_t r = 0;
    for (Value v : x)
        r = r * A + v;
    return r;
}

std::set<std::size_t> preimage(const std::vector<Value>& h, const std::set<std::size_t>& s) {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (s.count(h[i]))
            out.insert(i);
    return out;
}

Point from_set(std::size_t width, const std::set<std::size_t>& s) {
    std::vector<int> bits(width, 0);
    for (auto i : s)
        bits[i] = 1;
    return Point::from_bits(bits);
}

std::string digest_of(const std::string& s) { return sha256_hex(s).substr(0, 16); }

// Criterion 8 body: seeded random colorings of RSurj(M, L), every found
// witness rechecked through verify_witness and through direct composition.
struct SoundnessRun {
    std::size_t found = 0, discrepancies = 0;
    std::string reports;
};

SoundnessRun soundness(unsigned threads) {
    SoundnessRun run;
    std::mt19937_64 params(20240601);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t M = 1 + params() % 6;
        const std::size_t L = 1 + params() % std::min<std::size_t>(M, 3);
        const std::size_t N = L + params() % (M - L + 1);
        const auto k = static_cast<std::uint32_t>(1 + params() % 3);
        const Coloring g = random_coloring(Domain::rsurj(M, L), k, 1000 + i);
        const WitnessReport r = dual_ramsey_search(g, N, {threads});
        run.reports += to_json(r).dump() + "\n";
        if (!r.found)
            continue;
        ++run.found;
        const auto verified = verify_witness(g, r.witness->map(), Domain::rsurj(N, L));
        const oracle::RsurjTable table(M, L);
        std::set<Color> cone;
        for (const auto& u : oracle::rsurj_by_filter(N, L))
            cone.insert(g.at(table.index_of(oracle::compose(u, images_of(r.witness->map())))));
        if (verified.size() != 1 || cone.size() != 1 || verified != r.achieved_colors ||
            *cone.begin() != verified.front())
            ++run.discrepancies;
    }
    return run;
}

// Criterion 10 body.
struct PipelineRun {
    std::size_t successes = 0, exhausted = 0, violations = 0, unstable_logs = 0;
    std::size_t type_index_colors = 0;
    std::string reports;
};

const PipelineConfig acceptance_config{{8, 4, 3, 3, 3}, {2, 3, 0, 1}};

bool bound_holds(const Coloring& g, const WitnessReport& r, std::size_t t) {
    const auto h = images_of(r.witness->map());
    const std::size_t Mt = r.witness->cod_size();
    std::set<Color> colors;
    for (const auto& x : oracle::all_sequences(Mt, 2))
        colors.insert(g.at(numeral(oracle::compose(x, h), 2)));
    return colors.size() <= t && std::vector<Color>(colors.begin(), colors.end()) == r.achieved_colors;
}

PipelineRun pipelines(unsigned threads) {
    PipelineRun run;
    const std::size_t t = 4;
    const Coloring ti = type_index_coloring(8, 2);
    const WitnessReport tr = color_reduction_pipeline(ti, acceptance_config, {threads});
    run.reports += to_json(tr).dump() + "\n";
    if (!tr.found || !bound_holds(ti, tr, t))
        ++run.violations;
    run.type_index_colors = tr.achieved_colors.size();

    for (int i = 0; i < 100; ++i) {
        const auto k = static_cast<std::uint32_t>(2 + i % 2);
        const Coloring g = random_coloring(Domain::map(8, 2), k, 5000 + i);
        const WitnessReport r = color_reduction_pipeline(g, acceptance_config, {threads});
        const std::string dumped = to_json(r).dump();
        run.reports += dumped + "\n";
        if (r.found) {
            ++run.successes;
            if (!bound_holds(g, r, t))
                ++run.violations;
        } else {
            ++run.exhausted;
            if (!r.failed_stage || r.stage_log.size() != *r.failed_stage ||
                to_json(color_reduction_pipeline(g, acceptance_config, {threads})).dump() != dumped)
                ++run.unstable_logs;
        }
    }
    return run;
}

} // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "rigid-surjection counts", 5, [] {
        std::uint64_t total = 0;
        for (std::size_t M = 1; M <= 7; ++M)
            for (std::size_t N = 1; N <= M; ++N) {
                const auto got = enumerate_rsurj(M, N).size();
                const auto expect = oracle::stirling2(M, N);
                total += got;
                if (got != expect)
                    return Outcome{false, "M=" + std::to_string(M) + " N=" + std::to_string(N) + ": " +
                                              std::to_string(got) + " != S=" + std::to_string(expect)};
            }
        const auto s73 = enumerate_rsurj(7, 3).size();
        return Outcome{s73 == 301, "all 28 (M, N) pairs match the Stirling recurrence, |RSurj(7,3)| = " +
                                       std::to_string(s73) + ", " + std::to_string(total) + " maps"};
    });

    criterion(2, "functoriality of the derived embedding", 10, [] {
        std::uint64_t pairs = 0, failed = 0;
        for (std::size_t x = 1; x <= 5; ++x)
            for (std::size_t y = 1; y <= x; ++y)
                for (std::size_t z = 1; z <= y; ++z)
                    for (const auto& f : enumerate_rsurj(x, y))
                        for (const auto& g : enumerate_rsurj(y, z)) {
                            ++pairs;
                            const RigidSurjection gf = compose(g, f);
                            const auto lhs = images_of(derived_embedding(gf).map());
                            const auto rhs = oracle::compose(least_preimages(images_of(f.map()), y),
                                                             least_preimages(images_of(g.map()), z));
                            const auto direct = oracle::compose(images_of(g.map()), images_of(f.map()));
                            if (lhs != rhs || images_of(gf.map()) != direct ||
                                !oracle::rigid_by_definition(direct, z))
                                ++failed;
                        }
        return Outcome{failed == 0, std::to_string(pairs) + " composable pairs, " + std::to_string(failed) +
                                        " failures"};
    });

    criterion(3, "type catalog size", 1, [] {
        std::ostringstream detail;
        bool ok = true;
        for (std::size_t n = 1; n <= 5; ++n) {
            std::uint64_t words = 0;
            for (std::size_t len = 1; len <= n; ++len)
                for (const auto& w : oracle::all_sequences(len, n))
                    words += std::set<Value>(w.begin(), w.end()).size() == len;
            const auto cat = enumerate_types(n);
            ok = ok && type_bound(n) == words && cat.size() == words;
            detail << "t(" << n << ")=" << type_bound(n) << (n < 5 ? " " : "");
        }
        ok = ok && type_bound(2) == 4 && type_bound(3) == 15 && type_bound(5) == 325;
        return Outcome{ok, detail.str() + ", formula = catalog = injective words"};
    });

    criterion(4, "partition by mapping type", 10, [] {
        std::uint64_t maps = 0;
        for (std::size_t M = 1; M <= 6; ++M)
            for (std::size_t n = 1; n <= 3; ++n) {
                const TypePartition p = partition_by_type(M, n);
                std::map<std::vector<Value>, std::size_t> seen;
                for (std::size_t b = 0; b < p.blocks.size(); ++b)
                    for (const FiniteMap& f : p.blocks[b]) {
                        const auto img = images_of(f);
                        if (!seen.emplace(img, b).second)
                            return Outcome{false, "a map lies in two blocks"};
                        const auto word = first_occurrence_word(img);
                        if (images_of(p.catalog.types[b].as_map()) != word)
                            return Outcome{false, "a map sits in the block of another type"};
                    }
                std::uint64_t power = 1;
                for (std::size_t i = 0; i < M; ++i)
                    power *= n;
                if (seen.size() != power)
                    return Outcome{false, "union of blocks has " + std::to_string(seen.size()) + " maps, expected " +
                                              std::to_string(power)};
                maps += power;
            }
        return Outcome{true, "blocks disjoint and exhaustive for M <= 6, n <= 3 (" + std::to_string(maps) + " maps)"};
    });

    criterion(5, "transpose lemma", 60, [] {
        std::uint64_t checked = 0, failed = 0;
        for (std::size_t a = 1; a <= 3; ++a)
            for (std::size_t b = 1; b <= 3; ++b) {
                for (const auto& fbits : oracle::all_sequences(a * b, 2)) {
                    // f(j)(i) = fbits[j * a + i]
                    std::vector<Point> pts;
                    for (std::size_t j = 0; j < b; ++j)
                        pts.push_back(Point::from_bits(std::vector<int>(fbits.begin() + j * a,
                                                                        fbits.begin() + (j + 1) * a)));
                    const PointFamily f(a, pts);
                    for (const auto& h : oracle::all_sequences(a, a)) {
                        ++checked;
                        const PointFamily lhs = transpose(powerset_apply(FiniteMap(a, a, h), f));
                        // Φ(f) ∘ h evaluated entrywise: (Φ(f)(h(i)))(j) = f(j)(h(i)).
                        bool same = lhs.arity() == a && lhs.width() == b;
                        for (std::size_t i = 0; same && i < a; ++i)
                            for (std::size_t j = 0; same && j < b; ++j)
                                same = lhs[i].bit(j) == (fbits[j * a + h[i]] == 1);
                        failed += !same;
                    }
                }
            }
        return Outcome{failed == 0, std::to_string(checked) + " (h, f) pairs over widths <= 3, " +
                                        std::to_string(failed) + " failures"};
    });

    criterion(6, "least-element claim and lex preservation", 60, [] {
        std::uint64_t maps = 0, failed = 0;
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t M = m; M <= 5; ++M)
                for (const auto& h : enumerate_rsurj(M, m)) {
                    ++maps;
                    const auto img = images_of(h.map());
                    bool ok = check_claim1(h) && check_structure_embedding(h.map(), Structure::Lex);
                    for (std::uint64_t ka = 1; ok && ka < (1U << m); ++ka) {
                        const auto A = oracle::as_set(Point(m, ka));
                        const auto pre = preimage(img, A);
                        ok = !pre.empty() && *pre.begin() == *preimage(img, {*A.begin()}).begin();
                    }
                    for (std::uint64_t kx = 0; ok && kx < (1U << m); ++kx)
                        for (std::uint64_t ky = 0; ok && ky < (1U << m); ++ky) {
                            const Point x(m, kx), y(m, ky);
                            const Point px = from_set(M, preimage(img, oracle::as_set(x)));
                            const Point py = from_set(M, preimage(img, oracle::as_set(y)));
                            ok = oracle::lex_leq_by_sets(x, y) == oracle::lex_leq_by_sets(px, py);
                        }
                    failed += !ok;
                }
        return Outcome{failed == 0, std::to_string(maps) + " rigid h with m <= 3, M <= 5, " + std::to_string(failed) +
                                        " failures"};
    });

    criterion(7, "eight-structure embedding", 120, [] {
        std::uint64_t maps = 0, failed = 0;
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t M = m; M <= 5; ++M)
                for (const auto& h : enumerate_rsurj(M, m)) {
                    ++maps;
                    const auto img = images_of(h.map());
                    bool ok = true;
                    for (Structure s : all_structures)
                        ok = ok && check_structure_embedding(h.map(), s);
                    // Set-level recomputation of the Boolean and relational structure.
                    const std::set<std::size_t> full = preimage(img, oracle::as_set(top(m)));
                    ok = ok && full.size() == M && preimage(img, {}).empty();
                    for (std::uint64_t kx = 0; ok && kx < (1U << m); ++kx) {
                        const auto x = oracle::as_set(Point(m, kx));
                        const auto px = preimage(img, x);
                        std::set<std::size_t> cx;
                        for (std::size_t i = 0; i < m; ++i)
                            if (!x.count(i))
                                cx.insert(i);
                        std::set<std::size_t> cpx;
                        for (std::size_t i = 0; i < M; ++i)
                            if (!px.count(i))
                                cpx.insert(i);
                        ok = preimage(img, cx) == cpx;
                        for (std::uint64_t ky = 0; ok && ky < (1U << m); ++ky) {
                            const auto y = oracle::as_set(Point(m, ky));
                            const auto py = preimage(img, y);
                            std::set<std::size_t> meet_xy, join_xy, meet_p, join_p;
                            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                                                  std::inserter(meet_xy, meet_xy.end()));
                            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::inserter(join_xy, join_xy.end()));
                            std::set_intersection(px.begin(), px.end(), py.begin(), py.end(),
                                                  std::inserter(meet_p, meet_p.end()));
                            std::set_union(px.begin(), px.end(), py.begin(), py.end(), std::inserter(join_p, join_p.end()));
                            const bool sub = std::includes(y.begin(), y.end(), x.begin(), x.end());
                            const bool psub = std::includes(py.begin(), py.end(), px.begin(), px.end());
                            const bool adj = x != y && !meet_xy.empty();
                            const bool padj = px != py && !meet_p.empty();
                            ok = preimage(img, meet_xy) == meet_p && preimage(img, join_xy) == join_p && sub == psub &&
                                 adj == padj && (x == y) == (px == py);
                        }
                    }
                    failed += !ok;
                }
        return Outcome{failed == 0, "LEX and Q, EQ, G, OG, B, EB, L, EL over " + std::to_string(maps) +
                                        " rigid h, " + std::to_string(failed) + " failures"};
    });

    criterion(8, "search soundness", 600, [] {
        const SoundnessRun r = soundness(1);
        return Outcome{r.discrepancies == 0 && r.found > 0,
                       "1000 random colorings, " + std::to_string(r.found) + " witnesses found, " +
                           std::to_string(r.discrepancies) + " discrepancies"};
    });

    criterion(9, "dual Ramsey number oracle agreement", 600, [] {
        const DrNumberResult engine = dr_number(2, 3, 2, 5);
        // Per-coloring search over every 2-coloring, and the brute-force oracle.
        std::ostringstream detail;
        bool ok = !engine.minimal_M && engine.levels.size() == 3;
        for (std::size_t M = 3; M <= 5 && ok; ++M) {
            const Domain d = Domain::rsurj(M, 2);
            const oracle::RsurjTable table(M, 2);
            const std::uint64_t colorings = std::uint64_t{1} << d.size();
            std::uint64_t without = 0, disagreements = 0;
            std::optional<std::uint64_t> first;
            for (std::uint64_t c = 0; c < colorings; ++c) {
                const Coloring g = coloring_by_index(d, 2, c);
                const bool found = dual_ramsey_search(g, 3).found;
                const auto brute = oracle::least_witness(M, 3, 2, [&](const std::vector<Value>& s) {
                    return static_cast<Color>((c >> (d.size() - 1 - table.index_of(s))) & 1U);
                });
                disagreements += found != brute.has_value();
                if (!found) {
                    ++without;
                    if (!first)
                        first = c;
                }
            }
            const DrLevel& level = engine.levels[M - 3];
            ok = disagreements == 0 && level.colorings == colorings && level.without_witness == without &&
                 level.first_counterexample == first;
            detail << "M=" << M << ": " << without << "/" << colorings << " without witness; ";
        }
        // Frozen regression values from the brute-force oracle.
        ok = ok && engine.levels[1].colorings == 128 && engine.levels[2].colorings == 32768 &&
             engine.levels[0].without_witness == 6 && engine.levels[1].without_witness == 10 &&
             engine.levels[2].without_witness == 2 && engine.levels[2].first_counterexample == 6014;
        detail << "minimal M: none <= 5";
        return Outcome{ok, detail.str()};
    });

    criterion(10, "pipeline bound t(2) = 4", 600, [] {
        const PipelineRun r = pipelines(1);
        const bool ok = r.violations == 0 && r.unstable_logs == 0 && r.type_index_colors == 4 && r.successes > 0;
        return Outcome{ok, "schedule 8,4,3,3,3: type-index run achieved " + std::to_string(r.type_index_colors) +
                               " colors; random runs " + std::to_string(r.successes) + " found, " +
                               std::to_string(r.exhausted) + " exhausted, " + std::to_string(r.violations) +
                               " bound violations, " + std::to_string(r.unstable_logs) + " unstable stage logs"};
    });

    criterion(11, "determinism", 600, [] {
        std::vector<std::string> digests;
        for (unsigned threads : {1U, 1U, 3U}) {
            std::string all = soundness(threads).reports;
            all += to_json(dr_number(2, 3, 2, 5, {threads})).dump() + "\n";
            all += pipelines(threads).reports;
            digests.push_back(digest_of(all));
        }
        const bool ok = digests[0] == digests[1] && digests[0] == digests[2];
        return Outcome{ok, "criteria 8-10 reports sequential, repeated and with 3 threads: " + digests[0] + " " +
                               digests[1] + " " + digests[2]};
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
