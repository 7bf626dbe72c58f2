#include "dualramsey/order_core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dualramsey {

FiniteMap::FiniteMap(std::size_t dom_size, std::size_t cod_size, std::vector<Value> images)
    : cod_size_(cod_size), images_(std::move(images)) {
    if (dom_size == 0 || cod_size == 0)
        throw std::invalid_argument("FiniteMap: domain and codomain must be nonempty");
    if (images_.size() != dom_size)
        throw std::invalid_argument("FiniteMap: image sequence has length " + std::to_string(images_.size()) +
                                    ", expected " + std::to_string(dom_size));
    for (Value v : images_)
        if (v >= cod_size)
            throw std::invalid_argument("FiniteMap: image " + std::to_string(v) + " outside codomain of size " +
                                        std::to_string(cod_size));
}

FiniteMap FiniteMap::identity(std::size_t n) {
    std::vector<Value> images(n);
    for (std::size_t i = 0; i < n; ++i)
        images[i] = static_cast<Value>(i);
    return FiniteMap(n, n, std::move(images));
}

FiniteMap FiniteMap::constant(std::size_t dom_size, std::size_t cod_size, Value v) {
    return FiniteMap(dom_size, cod_size, std::vector<Value>(dom_size, v));
}

std::strong_ordering operator<=>(const FiniteMap& a, const FiniteMap& b) {
    auto c = std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(), b.images_.begin(),
                                                    b.images_.end());
    if (c != 0)
        return c;
    return a.cod_size_ <=> b.cod_size_;
}

bool is_rigid_prefix(std::span<const Value> images) noexcept {
    Value next = 0;
    for (Value v : images) {
        if (v > next)
            return false;
        if (v == next)
            ++next;
    }
    return true;
}

bool is_rigid_surjection(const FiniteMap& f) noexcept {
    // Restricted growth: each value is at most one more than the running max,
    // and the final max reaches the top of the codomain.
    Value next = 0;
    for (Value v : f.images()) {
        if (v > next)
            return false;
        if (v == next)
            ++next;
    }
    return next == f.cod_size();
}

RigidSurjection::RigidSurjection(FiniteMap f) : map_(std::move(f)) {
    if (!is_rigid_surjection(map_))
        throw std::invalid_argument("RigidSurjection: map is not a rigid surjection");
}

StrictlyIncreasingMap::StrictlyIncreasingMap(FiniteMap f) : map_(std::move(f)) {
    auto im = map_.images();
    for (std::size_t i = 1; i < im.size(); ++i)
        if (im[i - 1] >= im[i])
            throw std::invalid_argument("StrictlyIncreasingMap: images are not strictly increasing");
}

namespace {

void check_rsurj_sizes(std::size_t M, std::size_t N) {
    if (M == 0 || N == 0)
        throw std::invalid_argument("rigid surjection sizes must be positive");
    if (N > M)
        throw std::invalid_argument("no rigid surjection " + std::to_string(M) + " -> " + std::to_string(N) +
                                    ": codomain larger than domain");
}

void rsurj_dfs(std::vector<Value>& images, std::size_t pos, std::size_t used, std::size_t N,
               const std::function<void(std::span<const Value>)>& visit) {
    const std::size_t M = images.size();
    if (pos == M) {
        visit(images);
        return;
    }
    const std::size_t remaining = M - pos;
    // Values N - used still have to appear in `remaining` slots.
    if (N - used < remaining)
        for (std::size_t v = 0; v < used; ++v) {
            images[pos] = static_cast<Value>(v);
            rsurj_dfs(images, pos + 1, used, N, visit);
        }
    if (used < N) {
        images[pos] = static_cast<Value>(used);
        rsurj_dfs(images, pos + 1, used + 1, N, visit);
    }
}

} // namespace

void for_each_rsurj(std::size_t M, std::size_t N, const std::function<void(std::span<const Value>)>& visit) {
    check_rsurj_sizes(M, N);
    std::vector<Value> images(M);
    rsurj_dfs(images, 0, 0, N, visit);
}

std::vector<RigidSurjection> enumerate_rsurj(std::size_t M, std::size_t N) {
    std::vector<RigidSurjection> out;
    for_each_rsurj(M, N, [&](std::span<const Value> im) {
        out.emplace_back(FiniteMap(M, N, std::vector<Value>(im.begin(), im.end())));
    });
    return out;
}

RigidSurjection least_rsurj(std::size_t M, std::size_t N) {
    check_rsurj_sizes(M, N);
    std::vector<Value> images(M, 0);
    for (std::size_t y = 1; y < N; ++y)
        images[M - N + y] = static_cast<Value>(y);
    return RigidSurjection(FiniteMap(M, N, std::move(images)));
}

FiniteMap compose(const FiniteMap& outer, const FiniteMap& inner) {
    if (inner.cod_size() != outer.dom_size())
        throw std::invalid_argument("compose: inner codomain " + std::to_string(inner.cod_size()) +
                                    " does not match outer domain " + std::to_string(outer.dom_size()));
    std::vector<Value> images(inner.dom_size());
    for (std::size_t i = 0; i < images.size(); ++i)
        images[i] = outer(inner(i));
    return FiniteMap(inner.dom_size(), outer.cod_size(), std::move(images));
}

RigidSurjection compose(const RigidSurjection& outer, const RigidSurjection& inner) {
    return RigidSurjection(compose(outer.map(), inner.map()));
}

StrictlyIncreasingMap derived_embedding(const RigidSurjection& f) {
    std::vector<Value> first(f.cod_size());
    Value next = 0;
    for (std::size_t i = 0; i < f.dom_size(); ++i)
        if (f(i) == next)
            first[next++] = static_cast<Value>(i);
    return StrictlyIncreasingMap(FiniteMap(f.cod_size(), f.dom_size(), std::move(first)));
}

RsurjIndexer::RsurjIndexer(std::size_t M, std::size_t N) : M_(M), N_(N), table_((M + 1) * (N + 1), 0) {
    check_rsurj_sizes(M, N);
    if (M > 24)
        throw std::invalid_argument("RsurjIndexer: domain size above 24 overflows the rank table");
    table_[0 * (N + 1) + N] = 1;
    for (std::size_t r = 1; r <= M; ++r)
        for (std::size_t u = 0; u <= N; ++u) {
            std::uint64_t c = u * table_[(r - 1) * (N + 1) + u];
            if (u < N)
                c += table_[(r - 1) * (N + 1) + u + 1];
            table_[r * (N + 1) + u] = c;
        }
}

std::uint64_t RsurjIndexer::rank(std::span<const Value> images) const noexcept {
    std::uint64_t r = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        const Value v = images[i];
        r += v * completions(M_ - 1 - i, used);
        if (v == used)
            ++used;
    }
    return r;
}

std::vector<Value> RsurjIndexer::unrank(std::uint64_t index) const {
    if (index >= count())
        throw std::out_of_range("RsurjIndexer::unrank: index out of range");
    std::vector<Value> images(M_);
    std::size_t used = 0;
    for (std::size_t i = 0; i < M_; ++i) {
        const std::uint64_t per_old = completions(M_ - 1 - i, used);
        if (per_old > 0 && index < used * per_old) {
            images[i] = static_cast<Value>(index / per_old);
            index %= per_old;
        } else {
            index -= used * per_old;
            images[i] = static_cast<Value>(used++);
        }
    }
    return images;
}

} // namespace dualramsey
