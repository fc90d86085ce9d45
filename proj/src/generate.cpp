#include "perigid/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace perigid {

namespace {

constexpr int kGainBox = 3;

class Builder {
public:
    Builder(int d, std::uint64_t seed) : d_(d), rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    void add(VertexId tail, VertexId head) {
        if (uniform(0, 1) == 1) std::swap(tail, head);
        EdgeOrbit e;
        e.tail = tail;
        e.head = head;
        do {
            e.gain.assign(static_cast<std::size_t>(d_), 0);
            for (auto& c : e.gain) c = uniform(-kGainBox, kGainBox);
        } while (e.is_loop() && std::all_of(e.gain.begin(), e.gain.end(), [](auto c) { return c == 0; }));
        edges_.push_back(std::move(e));
    }

    // Random spanning tree on `vertices` (attach each to an earlier one).
    void tree(std::vector<VertexId> vertices) {
        std::shuffle(vertices.begin(), vertices.end(), rng_);
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            add(vertices[static_cast<std::size_t>(uniform(0, static_cast<int>(i) - 1))], vertices[i]);
        }
    }

    std::mt19937_64& rng() { return rng_; }
    std::vector<EdgeOrbit>& edges() { return edges_; }

private:
    int d_;
    std::mt19937_64 rng_;
    std::vector<EdgeOrbit> edges_;
};

std::vector<VertexId> range(int n) {
    std::vector<VertexId> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

}  // namespace

std::string to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::random: return "random";
        case InstanceKind::decomposable: return "decomposable";
        case InstanceKind::violating: return "violating";
    }
    return "unknown";
}

InstanceKind instance_kind_from_string(const std::string& s) {
    for (auto k : {InstanceKind::random, InstanceKind::decomposable, InstanceKind::violating}) {
        if (to_string(k) == s) return k;
    }
    throw std::invalid_argument("unknown instance kind '" + s + "'");
}

GeneratedInstance generate_instance(int d, int n, std::optional<std::int64_t> m, InstanceKind kind,
                                    std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("generate: dimension must be at least 1");
    if (n < 1) throw std::invalid_argument("generate: need at least one vertex");
    const std::int64_t a = choose2(d + 1);
    const std::int64_t target = (n - 1) * a + std::int64_t{d} * d;
    if (m && *m < 0) throw std::invalid_argument("generate: negative edge count");
    if (kind != InstanceKind::random && m && *m != target) {
        throw std::invalid_argument("generate: " + to_string(kind) + " instances have exactly " +
                                    std::to_string(target) + " edges");
    }
    if (kind == InstanceKind::violating && n < 2) {
        throw std::invalid_argument("generate: violating instances need at least two vertices");
    }

    Builder b(d, seed);
    std::vector<char> planted_flag;
    switch (kind) {
        case InstanceKind::random:
            for (std::int64_t i = 0; i < m.value_or(target); ++i) b.add(b.uniform(0, n - 1), b.uniform(0, n - 1));
            break;
        case InstanceKind::decomposable:
            for (int i = 0; i < d; ++i) b.tree(range(n));
            for (std::int64_t f = 0; f < choose2(d); ++f) {
                for (VertexId v = 0; v < n; ++v) b.add(b.uniform(0, n - 1), v);
            }
            for (std::int64_t i = 0; i < a; ++i) b.add(b.uniform(0, n - 1), b.uniform(0, n - 1));
            break;
        case InstanceKind::violating: {
            // W gets a·w − d + C(d+1,2) + 1 edges, connected; the rest touch V∖W.
            const int w = b.uniform(1, n - 1);
            auto order = range(n);
            std::shuffle(order.begin(), order.end(), b.rng());
            const std::vector<VertexId> inside(order.begin(), order.begin() + w);
            const std::vector<VertexId> outside(order.begin() + w, order.end());
            const std::int64_t dense = a * w - d + a + 1;
            b.tree(inside);
            for (std::int64_t i = w - 1; i < dense; ++i) {
                b.add(inside[static_cast<std::size_t>(b.uniform(0, w - 1))],
                      inside[static_cast<std::size_t>(b.uniform(0, w - 1))]);
            }
            const auto dense_count = b.edges().size();
            for (std::int64_t i = 0; i < target - dense; ++i) {
                b.add(outside[static_cast<std::size_t>(b.uniform(0, n - w - 1))], b.uniform(0, n - 1));
            }
            planted_flag.assign(b.edges().size(), 0);
            std::fill(planted_flag.begin(), planted_flag.begin() + static_cast<std::ptrdiff_t>(dense_count), 1);
            break;
        }
    }

    auto& edges = b.edges();
    std::vector<std::size_t> perm(edges.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), b.rng());
    std::vector<EdgeOrbit> shuffled;
    GeneratedInstance out{QuotientGraph(d, n, {}), {}, {}};
    for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.push_back(std::move(edges[perm[i]]));
        if (!planted_flag.empty() && planted_flag[perm[i]]) out.planted.push_back(i);
    }
    out.graph = QuotientGraph(d, n, std::move(shuffled));
    out.comments.push_back("generated kind=" + to_string(kind) + " d=" + std::to_string(d) +
                           " n=" + std::to_string(n) + " seed=" + std::to_string(seed));
    if (!out.planted.empty()) {
        std::string line = "planted";
        for (EdgeId e : out.planted) line += " " + std::to_string(e + 1);
        out.comments.push_back(line);
    }
    return out;
}

}  // namespace perigid
