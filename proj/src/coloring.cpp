#include "dualramsey/coloring.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace dualramsey {

namespace {

void check_size(std::uint64_t size, const std::string& what) {
    if (size > max_domain_size)
        throw std::invalid_argument(what + " has " + std::to_string(size) + " elements, above the table limit");
}

std::shared_ptr<const std::vector<std::uint64_t>> member_ranks(const std::vector<PointFamily>& members) {
    auto ranks = std::make_shared<std::vector<std::uint64_t>>();
    ranks->reserve(members.size());
    for (const PointFamily& f : members)
        ranks->push_back(family_rank(f));
    return ranks;
}

} // namespace

Domain::Domain(DomainKind kind, std::size_t first, std::size_t second) : kind_(kind), first_(first), second_(second) {}

Domain Domain::rsurj(std::size_t M, std::size_t L) {
    Domain d(DomainKind::RSurj, M, L);
    d.indexer_ = std::make_shared<const RsurjIndexer>(M, L);
    d.size_ = d.indexer_->count();
    check_size(d.size_, d.describe());
    return d;
}

Domain Domain::map(std::size_t M, std::size_t A) {
    if (M == 0 || A == 0)
        throw std::invalid_argument("Map domain sizes must be positive");
    Domain d(DomainKind::Map, M, A);
    d.size_ = map_count(M, A);
    check_size(d.size_, d.describe());
    return d;
}

Domain Domain::family(std::size_t arity, std::size_t width) {
    if (arity == 0 || width == 0)
        throw std::invalid_argument("family domain sizes must be positive");
    Domain d(DomainKind::Family, arity, width);
    if (arity * width > 26)
        throw std::invalid_argument(d.describe() + " is above the table limit");
    d.size_ = family_count(arity, width);
    return d;
}

Domain Domain::emb(std::size_t n, std::size_t m) {
    Domain d(DomainKind::Emb, n, m);
    if (n * m > 26)
        throw std::invalid_argument(d.describe() + " is above the table limit");
    std::vector<PointFamily> members;
    for (LexTuple& t : enumerate_emb(n, m))
        members.push_back(t.family());
    d.members_ = member_ranks(members);
    d.size_ = d.members_->size();
    return d;
}

Domain Domain::substructure(Substructure sub, std::size_t m) {
    Domain d(DomainKind::Substructure, sub.size(), m);
    d.members_ = member_ranks(enumerate_embeddings(sub, m));
    d.size_ = d.members_->size();
    d.sub_ = std::move(sub);
    return d;
}

Structure Domain::structure() const {
    switch (kind_) {
    case DomainKind::Emb: return Structure::Lex;
    case DomainKind::Substructure: return sub_->structure();
    default: throw std::invalid_argument(describe() + " carries no structure");
    }
}

FiniteMap Domain::map_at(std::uint64_t index) const {
    if (index >= size_)
        throw std::out_of_range("Domain::map_at: index out of range for " + describe());
    switch (kind_) {
    case DomainKind::RSurj: return FiniteMap(first_, second_, indexer_->unrank(index));
    case DomainKind::Map: return map_unrank(first_, second_, index);
    default: throw std::invalid_argument(describe() + " does not hold maps");
    }
}

PointFamily Domain::family_at(std::uint64_t index) const {
    if (index >= size_)
        throw std::out_of_range("Domain::family_at: index out of range for " + describe());
    switch (kind_) {
    case DomainKind::Family: return family_unrank(first_, second_, index);
    case DomainKind::Emb:
    case DomainKind::Substructure: return family_unrank(first_, second_, (*members_)[index]);
    default: throw std::invalid_argument(describe() + " does not hold point families");
    }
}

std::optional<std::uint64_t> Domain::index_of(const FiniteMap& f) const {
    if (!holds_maps() || f.dom_size() != first_ || f.cod_size() != second_)
        return std::nullopt;
    if (kind_ == DomainKind::Map)
        return map_rank(f);
    if (!is_rigid_surjection(f))
        return std::nullopt;
    return indexer_->rank(f.images());
}

std::optional<std::uint64_t> Domain::index_of(const PointFamily& f) const {
    if (holds_maps() || f.arity() != first_ || f.width() != second_)
        return std::nullopt;
    const std::uint64_t r = family_rank(f);
    if (kind_ == DomainKind::Family)
        return r;
    auto it = std::lower_bound(members_->begin(), members_->end(), r);
    if (it == members_->end() || *it != r)
        return std::nullopt;
    return static_cast<std::uint64_t>(it - members_->begin());
}

Domain Domain::resized(std::size_t new_size) const {
    switch (kind_) {
    case DomainKind::RSurj: return rsurj(new_size, second_);
    case DomainKind::Map: return map(new_size, second_);
    case DomainKind::Family: return family(first_, new_size);
    case DomainKind::Emb: return emb(first_, new_size);
    case DomainKind::Substructure: return substructure(*sub_, new_size);
    }
    throw std::invalid_argument("Domain::resized: bad kind");
}

std::string Domain::describe() const {
    const std::string a = std::to_string(first_);
    const std::string b = std::to_string(second_);
    switch (kind_) {
    case DomainKind::RSurj: return "rsurj(" + a + ", " + b + ")";
    case DomainKind::Map: return "map(" + a + ", " + b + ")";
    case DomainKind::Family: return "family(" + a + ", " + b + ")";
    case DomainKind::Emb: return "emb(" + a + ", " + b + ")";
    case DomainKind::Substructure:
        return "substructure(" + std::string(structure_name(sub_->structure())) + ", " + a + " points, " + b + ")";
    }
    return "?";
}

bool operator==(const Domain& a, const Domain& b) {
    return a.kind_ == b.kind_ && a.first_ == b.first_ && a.second_ == b.second_ && a.sub_ == b.sub_;
}

Coloring::Coloring(Domain domain, std::uint32_t k, std::vector<Color> table)
    : domain_(std::move(domain)), k_(k), table_(std::move(table)) {
    if (k_ == 0)
        throw std::invalid_argument("Coloring: k must be positive");
    if (table_.size() != domain_.size())
        throw std::invalid_argument("Coloring: table has " + std::to_string(table_.size()) + " entries but " +
                                    domain_.describe() + " has " + std::to_string(domain_.size()) + " elements");
    for (Color c : table_)
        if (c >= k_)
            throw std::invalid_argument("Coloring: color " + std::to_string(c) + " not below k=" + std::to_string(k_));
}

Color Coloring::operator()(const FiniteMap& f) const {
    auto idx = domain_.index_of(f);
    if (!idx)
        throw std::invalid_argument("Coloring: map is not an element of " + domain_.describe());
    return table_[*idx];
}

Color Coloring::operator()(const PointFamily& f) const {
    auto idx = domain_.index_of(f);
    if (!idx)
        throw std::invalid_argument("Coloring: family is not an element of " + domain_.describe());
    return table_[*idx];
}

std::vector<Color> Coloring::image() const {
    std::vector<bool> seen(k_, false);
    for (Color c : table_)
        seen[c] = true;
    std::vector<Color> out;
    for (Color c = 0; c < k_; ++c)
        if (seen[c])
            out.push_back(c);
    return out;
}

Coloring constant_coloring(const Domain& domain, std::uint32_t k, Color c) {
    return Coloring(domain, k, std::vector<Color>(domain.size(), c));
}

Coloring random_coloring(const Domain& domain, std::uint32_t k, std::uint64_t seed) {
    if (k == 0)
        throw std::invalid_argument("random_coloring: k must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Color> table(domain.size());
    for (Color& c : table)
        c = static_cast<Color>(rng() % k);
    return Coloring(domain, k, std::move(table));
}

Coloring type_index_coloring(std::size_t M, std::size_t n) {
    const Domain domain = Domain::map(M, n);
    const TypeCatalog catalog = enumerate_types(n);
    std::vector<Color> table(domain.size());
    for (std::uint64_t i = 0; i < domain.size(); ++i)
        table[i] = static_cast<Color>(*catalog.index_of(mapping_type(domain.map_at(i))));
    return Coloring(domain, static_cast<std::uint32_t>(catalog.size()), std::move(table));
}

Coloring first_bits_coloring(const Domain& domain) {
    if (domain.holds_maps())
        throw std::invalid_argument("first_bits_coloring: needs a point-family domain");
    std::vector<Color> table(domain.size());
    for (std::uint64_t i = 0; i < domain.size(); ++i) {
        const PointFamily f = domain.family_at(i);
        const bool lead = f[0].bit(0);
        bool same = true;
        for (const Point& p : f.entries())
            same = same && p.bit(0) == lead;
        table[i] = same ? 1 : 0;
    }
    return Coloring(domain, 2, std::move(table));
}

} // namespace dualramsey
