#include "perigid/rigidity_matrix.hpp"

#include "perigid/pebble.hpp"

#include <algorithm>
#include <stdexcept>

namespace perigid {

namespace {

Point zeros(int d) { return Point(static_cast<std::size_t>(d)); }

Point unit(int d, int i) {
    Point p = zeros(d);
    p[static_cast<std::size_t>(i)] = 1;
    return p;
}

bool all_zero(const Point& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Endpoint must lie in span(e_1..e_k) of a k-plate.
bool on_plate(const Point& q, int k) {
    for (std::size_t a = static_cast<std::size_t>(k); a < q.size(); ++a) {
        if (sgn(q[a]) != 0) return false;
    }
    return true;
}

Rational random_fraction(std::mt19937_64& rng, int lo, int hi, int den) {
    std::uniform_int_distribution<int> pick(lo, hi);
    Rational x(pick(rng), den);
    x.canonicalize();
    return x;
}

Point bar_vector(const QuotientGraph& g, const Realization& r, EdgeId e) {
    const int d = g.dimension();
    const auto& edge = g.edge(e);
    const auto& [qt, qh] = r.endpoints[e];
    Point h = zeros(d);
    for (int a = 0; a < d; ++a) {
        Rational s = 0;
        for (int b = 0; b < d; ++b) {
            s += r.lattice(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) *
                 static_cast<long>(edge.gain[static_cast<std::size_t>(b)]);
        }
        const auto ai = static_cast<std::size_t>(a);
        s += r.frame_origins[static_cast<std::size_t>(edge.head)][ai] + qh[ai];
        s -= r.frame_origins[static_cast<std::size_t>(edge.tail)][ai] + qt[ai];
        h[ai] = s;
    }
    return h;
}

}  // namespace

int rotation_index(int d, int a, int b) {
    // Pairs (0,1)..(0,d−1), (1,2).. : rows before a hold (d−1) + … + (d−a).
    return a * (2 * d - a - 1) / 2 + (b - a - 1);
}

Realization realization_from_graph(const QuotientGraph& g, const RationalMatrix& lattice) {
    Realization r;
    r.lattice = lattice;
    r.frame_origins.assign(static_cast<std::size_t>(g.vertex_count()), zeros(g.dimension()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        if (!edge.q_tail || !edge.q_head) {
            throw GraphError("edges[" + std::to_string(e) + "]", "endpoints missing");
        }
        r.endpoints.emplace_back(*edge.q_tail, *edge.q_head);
    }
    return r;
}

QuotientGraph with_endpoints(const QuotientGraph& g, const Realization& r) {
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        edges[e].q_tail = r.endpoints.at(e).first;
        edges[e].q_head = r.endpoints.at(e).second;
    }
    return g.with_edges(std::move(edges));
}

RigidityMatrix::RigidityMatrix(int d, int n, Pinning pinning) : d_(d), n_(n), pinning_(pinning) {
    const auto free = static_cast<std::size_t>(pinning == Pinning::first_body ? n - 1 : n);
    const auto cols = free * static_cast<std::size_t>(choose2(d + 1)) + static_cast<std::size_t>(d * d);
    entries = RationalMatrix(0, cols);
}

std::size_t RigidityMatrix::free_bodies_before(VertexId v) const {
    return static_cast<std::size_t>(pinning_ == Pinning::first_body ? v - 1 : v);
}

std::optional<std::size_t> RigidityMatrix::translation_column(VertexId v, int a) const {
    if (pinning_ == Pinning::first_body && v == 0) return std::nullopt;
    return free_bodies_before(v) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(a);
}

std::optional<std::size_t> RigidityMatrix::rotation_column(VertexId v, int a, int b) const {
    if (pinning_ == Pinning::first_body && v == 0) return std::nullopt;
    const auto free = static_cast<std::size_t>(pinning_ == Pinning::first_body ? n_ - 1 : n_);
    const auto r = static_cast<std::size_t>(choose2(d_));
    return free * static_cast<std::size_t>(d_) + free_bodies_before(v) * r +
           static_cast<std::size_t>(rotation_index(d_, a, b));
}

std::size_t RigidityMatrix::lattice_column(int a, int b) const {
    const auto free = static_cast<std::size_t>(pinning_ == Pinning::first_body ? n_ - 1 : n_);
    return free * static_cast<std::size_t>(choose2(d_ + 1)) + static_cast<std::size_t>(a * d_ + b);
}

RigidityMatrix build_matrix(const QuotientGraph& g, const Realization& r, Pinning pinning) {
    const int d = g.dimension();
    const int n = g.vertex_count();
    const auto du = static_cast<std::size_t>(d);
    if (r.lattice.rows() != du || r.lattice.cols() != du) throw std::invalid_argument("lattice must be d x d");
    if (exact_rank(r.lattice) != du) throw std::invalid_argument("lattice is singular");
    if (r.frame_origins.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("one frame origin per vertex expected");
    }
    if (r.endpoints.size() != g.edge_count()) throw std::invalid_argument("one endpoint pair per edge expected");
    for (const auto& p : r.frame_origins) {
        if (p.size() != du) throw std::invalid_argument("frame origin has the wrong length");
    }

    RigidityMatrix m(d, n, pinning);
    std::vector<Rational> row(m.entries.cols());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        const auto& [qt, qh] = r.endpoints[e];
        const std::string where = "edges[" + std::to_string(e) + "]";
        if (qt.size() != du || qh.size() != du) throw std::invalid_argument(where + ": endpoint has the wrong length");
        if (!on_plate(qt, g.weight(edge.tail))) throw std::invalid_argument(where + ".q_tail: off its plate");
        if (!on_plate(qh, g.weight(edge.head))) throw std::invalid_argument(where + ".q_head: off its plate");
        const Point h = bar_vector(g, r, e);
        if (all_zero(h)) throw std::invalid_argument(where + ": zero-length bar");

        std::fill(row.begin(), row.end(), Rational(0));
        for (int a = 0; a < d; ++a) {
            const auto ai = static_cast<std::size_t>(a);
            if (auto c = m.translation_column(edge.head, a)) row[*c] += h[ai];
            if (auto c = m.translation_column(edge.tail, a)) row[*c] -= h[ai];
        }
        // Rotation of body v acting on endpoint q: Σ_{a<b} w_ab (h_a q_b − q_a h_b).
        auto add_rotation = [&](VertexId v, const Point& q, int sign) {
            const int k = g.weight(v);
            for (int a = 0; a < d && a < k; ++a) {
                for (int b = a + 1; b < d; ++b) {
                    auto c = m.rotation_column(v, a, b);
                    if (!c) continue;
                    const auto ai = static_cast<std::size_t>(a);
                    const auto bi = static_cast<std::size_t>(b);
                    Rational x = h[ai] * q[bi] - q[ai] * h[bi];
                    if (sign > 0) row[*c] += x; else row[*c] -= x;
                }
            }
        };
        add_rotation(edge.head, qh, +1);
        add_rotation(edge.tail, qt, -1);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const auto gb = edge.gain[static_cast<std::size_t>(b)];
                if (gb == 0) continue;
                row[m.lattice_column(a, b)] += h[static_cast<std::size_t>(a)] * static_cast<long>(gb);
            }
        }
        m.entries.append_row(row);
    }
    return m;
}

std::size_t exact_rank(const RigidityMatrix& m) { return exact_rank(m.entries); }

Realization random_realization(const QuotientGraph& g, std::mt19937_64& rng) {
    const int d = g.dimension();
    const auto du = static_cast<std::size_t>(d);
    Realization r;
    do {
        r.lattice = RationalMatrix::identity(du);
        for (std::size_t a = 0; a < du; ++a) {
            for (std::size_t b = 0; b < du; ++b) r.lattice(a, b) += random_fraction(rng, -3, 3, 7);
        }
    } while (exact_rank(r.lattice) != du);

    r.frame_origins.assign(static_cast<std::size_t>(g.vertex_count()), zeros(d));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.weight(v) == d) continue;
        for (auto& x : r.frame_origins[static_cast<std::size_t>(v)]) x = random_fraction(rng, -9, 9, 4);
    }

    auto endpoint = [&](VertexId v) {
        Point q = zeros(d);
        const int k = g.weight(v);
        for (int a = 0; a < k; ++a) q[static_cast<std::size_t>(a)] = random_fraction(rng, -9, 9, 4);
        return q;
    };
    r.endpoints.resize(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        for (int attempt = 0;; ++attempt) {
            r.endpoints[e] = {endpoint(edge.tail), endpoint(edge.head)};
            if (!all_zero(bar_vector(g, r, e))) break;
            if (attempt > 100) {
                throw std::invalid_argument("edges[" + std::to_string(e) + "]: every sampled bar has zero length");
            }
        }
    }
    return r;
}

std::size_t generic_rank(const QuotientGraph& g, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("generic_rank: trials must be positive");
    std::mt19937_64 rng(seed);
    std::size_t best = 0;
    for (int t = 0; t < trials; ++t) {
        const auto r = random_realization(g, rng);
        best = std::max(best, exact_rank(build_matrix(g, r)));
        if (best == g.edge_count()) break;
    }
    return best;
}

QuotientGraph with_random_endpoints(const QuotientGraph& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return with_endpoints(g, random_realization(g, rng));
}

Archetype archetype_realization(const QuotientGraph& g, const Decomposition& dec, std::optional<std::int64_t> scale) {
    if (!g.all_bodies()) throw std::invalid_argument("archetype_realization: body graphs only");
    if (auto problem = validate_decomposition(g, dec)) {
        throw std::invalid_argument("archetype_realization: invalid decomposition: " + *problem);
    }
    const int d = g.dimension();
    const std::int64_t big = scale.value_or(std::int64_t{g.vertex_count()} + 1);
    if (big <= g.vertex_count()) throw std::invalid_argument("archetype_realization: need N > n");

    auto edges = g.edges();
    auto unit_gain = [d](int i, std::int64_t s) {
        GainVector c(static_cast<std::size_t>(d), 0);
        c[static_cast<std::size_t>(i)] += s;
        return c;
    };
    for (int i = 0; i < d; ++i) {
        for (EdgeId e : dec.trees[static_cast<std::size_t>(i)]) {
            edges[e].gain = unit_gain(i, 1);
            edges[e].q_tail = zeros(d);
            edges[e].q_head = zeros(d);
        }
    }
    for (const auto& f : dec.pseudoforests) {
        for (std::size_t x = 0; x < f.edges.size(); ++x) {
            auto& edge = edges[f.edges[x]];
            if (f.heads[x] == edge.head) {
                edge.gain = unit_gain(f.j, 1);
                edge.q_tail = zeros(d);
                edge.q_head = unit(d, f.i);
            } else {
                // Stored against the orientation: same bar read backwards.
                edge.gain = unit_gain(f.j, -1);
                edge.q_tail = unit(d, f.i);
                edge.q_head = zeros(d);
            }
        }
    }
    std::size_t next = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            auto& edge = edges[dec.residual[next++]];
            edge.gain = unit_gain(i, big);
            edge.gain[static_cast<std::size_t>(j)] += big;
            edge.q_tail = zeros(d);
            edge.q_head = zeros(d);
        }
    }
    QuotientGraph out = g.with_edges(std::move(edges));
    Realization r = realization_from_graph(out, RationalMatrix::identity(static_cast<std::size_t>(d)));
    return Archetype{std::move(out), std::move(r), big};
}

QuotientGraph break_loop(const QuotientGraph& g, EdgeId loop, VertexId target, std::int64_t k) {
    const auto& edge = g.edge(loop);
    if (!edge.is_loop()) throw std::invalid_argument("break_loop: edge is not a loop");
    if (target == edge.head) throw std::invalid_argument("break_loop: target is the loop vertex");
    if (target < 0 || target >= g.vertex_count()) throw std::invalid_argument("break_loop: target out of range");
    if (k < 1) throw std::invalid_argument("break_loop: k must be positive");
    const int d = g.dimension();
    Point q = edge.q_head.value_or(zeros(d));
    if (edge.q_tail) {
        for (std::size_t a = 0; a < q.size(); ++a) q[a] -= (*edge.q_tail)[a];
    }
    for (auto& x : q) x *= static_cast<long>(k);

    auto edges = g.edges();
    auto& out = edges[loop];
    out.tail = target;
    for (auto& c : out.gain) c *= k;
    out.q_tail = zeros(d);
    out.q_head = std::move(q);
    return g.with_edges(std::move(edges));
}

LoopBreakSearch find_rank_preserving_break(const QuotientGraph& g, EdgeId loop, VertexId target,
                                           const RationalMatrix& lattice) {
    LoopBreakSearch s;
    s.rank_before = exact_rank(build_matrix(g, realization_from_graph(g, lattice)));
    for (std::int64_t k = 1; k <= (std::int64_t{1} << 20); k *= 2) {
        const auto broken = break_loop(g, loop, target, k);
        s.rank_after = exact_rank(build_matrix(broken, realization_from_graph(broken, lattice)));
        if (s.rank_after == s.rank_before) {
            s.k = k;
            break;
        }
    }
    return s;
}

bool satisfies_plus_count(const QuotientGraph& g, int a, int b) {
    if (b < 0) throw std::invalid_argument("satisfies_plus_count: b must be non-negative");
    // |F| ≤ a·n_F + b is the union of the (a,0) count matroid with a uniform
    // matroid of rank b, whose rank is min(m, s + b).
    const auto core = max_sparse_subgraph(as_multigraph(g), SparsityParams::make(a, 0));
    return g.edge_count() <= core.kept.size() + static_cast<std::size_t>(b);
}

Contraction contract_to_loops(const QuotientGraph& g, int a, int b) {
    if (!satisfies_plus_count(g, a, b)) throw std::invalid_argument("contract_to_loops: graph breaks the count");
    Contraction result{g, {}};
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& edge = result.graph.edge(e);
        if (edge.is_loop()) continue;
        bool done = false;
        for (VertexId keep : {edge.head, edge.tail}) {
            auto edges = result.graph.edges();
            const VertexId other = keep == edges[e].head ? edges[e].tail : edges[e].head;
            edges[e].tail = keep;
            edges[e].head = keep;
            edges[e].q_tail.reset();
            edges[e].q_head.reset();
            auto candidate = result.graph.with_edges(std::move(edges));
            if (!satisfies_plus_count(candidate, a, b)) continue;
            result.graph = std::move(candidate);
            result.steps.push_back(ContractionStep{e, keep, other});
            done = true;
            break;
        }
        if (!done) throw std::logic_error("contract_to_loops: no endpoint keeps the count");
    }
    return result;
}

}  // namespace perigid
