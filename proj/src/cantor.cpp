#include "dualramsey/cantor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace dualramsey {

namespace {

std::uint64_t width_mask(std::size_t width) { return (std::uint64_t{1} << width) - 1; }

} // namespace

Point::Point(std::size_t width, std::uint64_t key) : width_(width), key_(key) {
    if (width == 0 || width > max_point_width)
        throw std::invalid_argument("Point: width must be in 1.." + std::to_string(max_point_width));
    if (key > width_mask(width))
        throw std::invalid_argument("Point: key has bits beyond width " + std::to_string(width));
}

Point Point::from_bits(std::span<const int> bits) {
    std::uint64_t key = 0;
    for (int b : bits) {
        if (b != 0 && b != 1)
            throw std::invalid_argument("Point: bits must be 0 or 1");
        key = (key << 1) | static_cast<std::uint64_t>(b);
    }
    return Point(bits.size(), key);
}

Point Point::parse(std::string_view bits) {
    std::uint64_t key = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("Point: bitstring '" + std::string(bits) + "' has a character other than 0/1");
        key = (key << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Point(bits.size(), key);
}

std::string Point::to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i)
        if (bit(i))
            s[i] = '1';
    return s;
}

Point bot(std::size_t m) { return Point(m, 0); }
Point top(std::size_t m) { return Point(m, width_mask(m)); }

Point powerset_apply(const FiniteMap& h, const Point& x) {
    if (h.cod_size() != x.width())
        throw std::invalid_argument("powerset_apply: map codomain " + std::to_string(h.cod_size()) +
                                    " does not match point width " + std::to_string(x.width()));
    std::uint64_t key = 0;
    for (Value v : h.images())
        key = (key << 1) | static_cast<std::uint64_t>(x.bit(v));
    return Point(h.dom_size(), key);
}

std::size_t check_width(const Point& x, const Point& y) {
    if (x.width() != y.width())
        throw std::invalid_argument("point widths differ: " + std::to_string(x.width()) + " vs " +
                                    std::to_string(y.width()));
    return x.width();
}

std::strong_ordering lex_compare(const Point& x, const Point& y) {
    check_width(x, y);
    // At the least differing coordinate (the highest differing key bit) the
    // smaller point carries 0.
    const std::uint64_t diff = x.key() ^ y.key();
    if (diff == 0)
        return std::strong_ordering::equal;
    const std::uint64_t first = std::uint64_t{1} << (63 - std::countl_zero(diff));
    return (x.key() & first) ? std::strong_ordering::greater : std::strong_ordering::less;
}

bool poset_leq(const Point& x, const Point& y) {
    check_width(x, y);
    return (x.key() & ~y.key()) == 0;
}

bool graph_adjacent(const Point& x, const Point& y) {
    check_width(x, y);
    return x.key() != y.key() && (x.key() & y.key()) != 0;
}

Point meet(const Point& x, const Point& y) { return Point(check_width(x, y), x.key() & y.key()); }
Point join(const Point& x, const Point& y) { return Point(check_width(x, y), x.key() | y.key()); }
Point complement(const Point& x) { return Point(x.width(), ~x.key() & width_mask(x.width())); }

PointFamily::PointFamily(std::size_t width, std::vector<Point> entries) : width_(width), entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("PointFamily: arity must be positive");
    for (const Point& p : entries_)
        if (p.width() != width_)
            throw std::invalid_argument("PointFamily: ragged family (entry width " + std::to_string(p.width()) +
                                        ", expected " + std::to_string(width_) + ")");
}

std::uint64_t family_count(std::size_t arity, std::size_t width) {
    if (arity * width > 62)
        throw std::invalid_argument("family_count: 2^(arity*width) does not fit in 64 bits");
    return std::uint64_t{1} << (arity * width);
}

std::uint64_t family_rank(const PointFamily& f) {
    family_count(f.arity(), f.width());
    std::uint64_t r = 0;
    for (const Point& p : f.entries())
        r = (r << f.width()) | p.key();
    return r;
}

PointFamily family_unrank(std::size_t arity, std::size_t width, std::uint64_t index) {
    if (index >= family_count(arity, width))
        throw std::invalid_argument("family_unrank: index out of range");
    std::vector<Point> entries;
    entries.reserve(arity);
    for (std::size_t a = 0; a < arity; ++a) {
        const std::size_t shift = (arity - 1 - a) * width;
        entries.emplace_back(width, (index >> shift) & width_mask(width));
    }
    return PointFamily(width, std::move(entries));
}

PointFamily transpose(const PointFamily& f) {
    // f : B -> 2^A with |B| = arity, |A| = width.
    const std::size_t b_size = f.arity();
    const std::size_t a_size = f.width();
    std::vector<Point> out;
    out.reserve(a_size);
    for (std::size_t a = 0; a < a_size; ++a) {
        std::uint64_t key = 0;
        for (std::size_t b = 0; b < b_size; ++b)
            key = (key << 1) | static_cast<std::uint64_t>(f[b].bit(a));
        out.emplace_back(b_size, key);
    }
    return PointFamily(b_size, std::move(out));
}

PointFamily powerset_apply(const FiniteMap& h, const PointFamily& f) {
    std::vector<Point> out;
    out.reserve(f.arity());
    for (const Point& p : f.entries())
        out.push_back(powerset_apply(h, p));
    return PointFamily(h.dom_size(), std::move(out));
}

PointFamily reindex(const PointFamily& f, const FiniteMap& h) {
    if (h.cod_size() != f.arity())
        throw std::invalid_argument("reindex: map codomain does not match family arity");
    std::vector<Point> out;
    out.reserve(h.dom_size());
    for (Value v : h.images())
        out.push_back(f[v]);
    return PointFamily(f.width(), std::move(out));
}

bool is_lex_increasing(const PointFamily& f) {
    for (std::size_t i = 1; i < f.arity(); ++i)
        if (lex_compare(f[i - 1], f[i]) != std::strong_ordering::less)
            return false;
    return true;
}

LexTuple::LexTuple(PointFamily points) : points_(std::move(points)) {
    if (!is_lex_increasing(points_))
        throw std::invalid_argument("LexTuple: points must be strictly lex increasing");
}

namespace {

void combinations_dfs(std::size_t m, std::uint64_t universe, std::size_t n, std::uint64_t from,
                      std::vector<Point>& current, std::vector<LexTuple>& out) {
    if (current.size() == n) {
        out.emplace_back(PointFamily(m, current));
        return;
    }
    const std::uint64_t needed = n - current.size();
    for (std::uint64_t key = from; key + needed <= universe; ++key) {
        current.emplace_back(m, key);
        combinations_dfs(m, universe, n, key + 1, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<LexTuple> enumerate_emb(std::size_t n, std::size_t m) {
    if (m == 0 || m > 20)
        throw std::invalid_argument("enumerate_emb: width must be in 1..20");
    const std::uint64_t universe = std::uint64_t{1} << m;
    if (n == 0 || n > universe)
        throw std::invalid_argument("enumerate_emb: need 1 <= n <= 2^m");
    std::vector<LexTuple> out;
    std::vector<Point> current;
    combinations_dfs(m, universe, n, 0, current, out);
    return out;
}

// ---------------------------------------------------------------------------

Signature signature(Structure s) {
    switch (s) {
    case Structure::Lex: return {.lex = true};
    case Structure::Q: return {.poset = true};
    case Structure::EQ: return {.lex = true, .poset = true};
    case Structure::G: return {.graph = true};
    case Structure::OG: return {.lex = true, .graph = true};
    case Structure::B: return {.lattice = true, .complemented = true};
    case Structure::EB: return {.lex = true, .lattice = true, .complemented = true};
    case Structure::L: return {.lattice = true};
    case Structure::EL: return {.lex = true, .lattice = true};
    }
    throw std::invalid_argument("signature: bad structure");
}

namespace {

constexpr std::array<std::pair<Structure, std::string_view>, 9> structure_names{{
    {Structure::Lex, "LEX"},
    {Structure::Q, "Q"},
    {Structure::EQ, "EQ"},
    {Structure::G, "G"},
    {Structure::OG, "OG"},
    {Structure::B, "B"},
    {Structure::EB, "EB"},
    {Structure::L, "L"},
    {Structure::EL, "EL"},
}};

} // namespace

std::string_view structure_name(Structure s) {
    for (auto [st, name] : structure_names)
        if (st == s)
            return name;
    throw std::invalid_argument("structure_name: bad structure");
}

Structure parse_structure(std::string_view name) {
    for (auto [st, n] : structure_names)
        if (n == name)
            return st;
    throw std::invalid_argument("unknown structure '" + std::string(name) +
                                "' (expected one of LEX, Q, EQ, G, OG, B, EB, L, EL)");
}

bool check_claim1(const RigidSurjection& h) {
    const std::size_t m = h.cod_size();
    if (m > 20)
        throw std::invalid_argument("check_claim1: codomain above 20 is too large to check exhaustively");
    const StrictlyIncreasingMap least = derived_embedding(h);
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
        // bit y of `subset` marks y ∈ A
        const auto min_a = static_cast<std::size_t>(std::countr_zero(subset));
        std::size_t min_preimage = h.dom_size();
        for (std::size_t i = 0; i < h.dom_size(); ++i)
            if ((subset >> h(i)) & 1U) {
                min_preimage = i;
                break;
            }
        if (min_preimage != least(min_a))
            return false;
    }
    return true;
}

namespace {

bool relations_agree(const Signature& sig, const Point& x, const Point& y, const Point& gx, const Point& gy) {
    if (sig.lex && (lex_compare(x, y) != lex_compare(gx, gy)))
        return false;
    if (sig.poset && (poset_leq(x, y) != poset_leq(gx, gy)))
        return false;
    if (sig.graph && (graph_adjacent(x, y) != graph_adjacent(gx, gy)))
        return false;
    return true;
}

} // namespace

bool check_structure_embedding(const FiniteMap& h, Structure s) {
    const std::size_t m = h.cod_size();
    if (m > 12)
        throw std::invalid_argument("check_structure_embedding: codomain above 12 is too large to check exhaustively");
    const Signature sig = signature(s);
    const std::uint64_t universe = std::uint64_t{1} << m;

    std::vector<Point> image;
    image.reserve(universe);
    for (std::uint64_t k = 0; k < universe; ++k)
        image.push_back(powerset_apply(h, Point(m, k)));

    std::vector<std::uint64_t> keys;
    keys.reserve(universe);
    for (const Point& p : image)
        keys.push_back(p.key());
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        return false;

    if (sig.complemented) {
        if (image.front() != bot(h.dom_size()) || image.back() != top(h.dom_size()))
            return false;
    }
    for (std::uint64_t a = 0; a < universe; ++a) {
        const Point x(m, a);
        if (sig.complemented && image[complement(x).key()] != complement(image[a]))
            return false;
        for (std::uint64_t b = 0; b < universe; ++b) {
            const Point y(m, b);
            if (!relations_agree(sig, x, y, image[a], image[b]))
                return false;
            if (sig.lattice) {
                if (image[a & b] != meet(image[a], image[b]) || image[a | b] != join(image[a], image[b]))
                    return false;
            }
        }
    }
    return true;
}

Substructure::Substructure(Structure s, std::vector<Point> points) : structure_(s), points_(std::move(points)) {
    if (points_.empty())
        throw std::invalid_argument("Substructure: no points");
    const std::size_t w = points_.front().width();
    for (const Point& p : points_)
        if (p.width() != w)
            throw std::invalid_argument("Substructure: points of mixed width");
    std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) { return a.key() < b.key(); });
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
        throw std::invalid_argument("Substructure: repeated point");

    const Signature sig = signature(s);
    auto require = [&](const Point& p, const char* what) {
        if (!index_of(p))
            throw std::invalid_argument(std::string("Substructure: not closed under ") + what + " (missing " +
                                        p.to_string() + ")");
    };
    if (sig.complemented) {
        require(bot(w), "the constant 0");
        require(top(w), "the constant 1");
    }
    for (const Point& x : points_) {
        if (sig.complemented)
            require(complement(x), "complement");
        if (sig.lattice)
            for (const Point& y : points_) {
                require(meet(x, y), "meet");
                require(join(x, y), "join");
            }
    }
}

Substructure Substructure::chain(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("Substructure::chain: empty chain");
    std::size_t w = 1;
    while ((std::uint64_t{1} << w) < n)
        ++w;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.emplace_back(w, i);
    return Substructure(Structure::Lex, std::move(pts));
}

std::optional<std::size_t> Substructure::index_of(const Point& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p,
                               [](const Point& a, const Point& b) { return a.key() < b.key(); });
    if (it == points_.end() || *it != p)
        return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

bool is_embedding(const Substructure& sub, const PointFamily& image) {
    if (image.arity() != sub.size())
        throw std::invalid_argument("is_embedding: family arity does not match substructure size");
    const auto pts = sub.points();
    const Signature sig = signature(sub.structure());
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (image[i] == image[j])
                return false;
    if (sig.complemented) {
        if (image[*sub.index_of(bot(sub.width()))] != bot(image.width()) ||
            image[*sub.index_of(top(sub.width()))] != top(image.width()))
            return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (sig.complemented && image[*sub.index_of(complement(pts[i]))] != complement(image[i]))
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!relations_agree(sig, pts[i], pts[j], image[i], image[j]))
                return false;
            if (sig.lattice) {
                if (image[*sub.index_of(meet(pts[i], pts[j]))] != meet(image[i], image[j]) ||
                    image[*sub.index_of(join(pts[i], pts[j]))] != join(image[i], image[j]))
                    return false;
            }
        }
    }
    return true;
}

std::vector<PointFamily> enumerate_embeddings(const Substructure& sub, std::size_t m) {
    const std::uint64_t total = family_count(sub.size(), m);
    if (total > (std::uint64_t{1} << 24))
        throw std::invalid_argument("enumerate_embeddings: Map(A, 2^m) too large to scan");
    std::vector<PointFamily> out;
    for (std::uint64_t i = 0; i < total; ++i) {
        PointFamily f = family_unrank(sub.size(), m, i);
        if (is_embedding(sub, f))
            out.push_back(std::move(f));
    }
    return out;
}

} // namespace dualramsey
