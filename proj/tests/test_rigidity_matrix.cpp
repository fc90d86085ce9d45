#include "perigid/matroid.hpp"
#include "perigid/pebble.hpp"
#include "perigid/rigidity_matrix.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace perigid;
using namespace perigid::testing;

namespace {

Point pt(std::initializer_list<long> xs) {
    Point p;
    for (long x : xs) p.emplace_back(x);
    return p;
}

EdgeOrbit bar(VertexId t, VertexId h, GainVector gain, Point qt, Point qh) {
    auto e = edge(t, h, std::move(gain));
    e.q_tail = std::move(qt);
    e.q_head = std::move(qh);
    return e;
}

// Global translation t and rotation A (skew, from w) as a vector on the
// columns of an unpinned matrix. Λ̇ = AΛ, ṗ_v = t + A p_v.
std::vector<Rational> trivial_motion(const QuotientGraph& g, const Realization& r, const RigidityMatrix& m,
                                     const Point& t, const std::vector<Rational>& w) {
    const int d = g.dimension();
    const auto du = static_cast<std::size_t>(d);
    RationalMatrix a(du, du);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = w[static_cast<std::size_t>(rotation_index(d, i, j))];
            a(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = -w[static_cast<std::size_t>(rotation_index(d, i, j))];
        }
    }
    std::vector<Rational> x(m.entries.cols());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto ap = multiply(a, r.frame_origins[static_cast<std::size_t>(v)]);
        for (int i = 0; i < d; ++i) {
            x[*m.translation_column(v, i)] = t[static_cast<std::size_t>(i)] + ap[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < d; ++j) {
                x[*m.rotation_column(v, i, j)] = w[static_cast<std::size_t>(rotation_index(d, i, j))];
            }
        }
    }
    for (std::size_t i = 0; i < du; ++i) {
        for (std::size_t j = 0; j < du; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < du; ++k) s += a(i, k) * r.lattice(k, j);
            x[m.lattice_column(static_cast<int>(i), static_cast<int>(j))] = s;
        }
    }
    return x;
}

// Rank after deleting the listed columns.
std::size_t rank_without_columns(const RationalMatrix& m, const std::vector<std::size_t>& drop) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (std::find(drop.begin(), drop.end(), c) == drop.end()) keep.push_back(c);
    }
    RationalMatrix out(m.rows(), keep.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = 0; k < keep.size(); ++k) out(r, k) = m(r, keep[k]);
    return exact_rank(out);
}

}  // namespace

TEST(RigidityMatrix, ShapeAndColumns) {
    const auto g = seven_edge_example();
    std::mt19937_64 rng(1);
    const auto m = build_matrix(g, random_realization(g, rng));
    EXPECT_EQ(m.entries.rows(), 7u);
    EXPECT_EQ(m.entries.cols(), 7u);
    EXPECT_FALSE(m.translation_column(0, 0));
    EXPECT_FALSE(m.rotation_column(0, 0, 1));
    EXPECT_EQ(*m.translation_column(1, 1), 1u);
    EXPECT_EQ(*m.rotation_column(1, 0, 1), 2u);
    EXPECT_EQ(m.lattice_column(1, 0), 5u);

    const RigidityMatrix free(3, 2, Pinning::none);
    EXPECT_EQ(*free.rotation_column(1, 1, 2), 3u * 2 + 3 + 2);
    EXPECT_EQ(rotation_index(3, 0, 1), 0);
    EXPECT_EQ(rotation_index(3, 0, 2), 1);
    EXPECT_EQ(rotation_index(3, 1, 2), 2);
    EXPECT_EQ(rotation_index(4, 2, 3), 5);
}

TEST(RigidityMatrix, SingleVertexRowIsGainTimesBar) {
    // h = Λc + q_head − q_tail, lattice coefficient h_a c_b.
    const QuotientGraph g(2, 1, {bar(0, 0, {1, 2}, pt({1, 0}), pt({0, 3}))});
    RationalMatrix lattice(2, 2);
    lattice(0, 0) = 2;
    lattice(0, 1) = 1;
    lattice(1, 1) = 1;
    const auto m = build_matrix(g, realization_from_graph(g, lattice));
    ASSERT_EQ(m.entries.cols(), 4u);
    // Λc = (4, 2); h = (4 − 1, 2 + 3) = (3, 5).
    EXPECT_EQ(m.entries(0, 0), 3);
    EXPECT_EQ(m.entries(0, 1), 6);
    EXPECT_EQ(m.entries(0, 2), 5);
    EXPECT_EQ(m.entries(0, 3), 10);
}

TEST(RigidityMatrix, LoopAtPinnedBodyTouchesOnlyTheLattice) {
    const QuotientGraph g(2, 2, {bar(0, 0, {1, -1}, pt({1, 1}), pt({2, -1})), bar(0, 1, {0, 1}, pt({1, 0}), pt({0, 1}))});
    const auto m = build_matrix(g, realization_from_graph(g, RationalMatrix::identity(2)));
    for (int a = 0; a < 2; ++a) EXPECT_EQ(m.entries(0, *m.translation_column(1, a)), 0);
    EXPECT_EQ(m.entries(0, *m.rotation_column(1, 0, 1)), 0);
    // h = (1, −1) + (2, −1) − (1, 1) = (2, −3); coefficients h_a c_b.
    EXPECT_EQ(m.entries(0, m.lattice_column(0, 0)), 2);
    EXPECT_EQ(m.entries(0, m.lattice_column(0, 1)), -2);
    EXPECT_EQ(m.entries(0, m.lattice_column(1, 0)), -3);
    EXPECT_EQ(m.entries(0, m.lattice_column(1, 1)), 3);
}

TEST(RigidityMatrix, RowLocality) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_graph(3, 4, 12, seed);
        std::mt19937_64 rng(seed);
        const auto m = build_matrix(g, random_realization(g, rng), Pinning::none);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            for (VertexId v = 0; v < 4; ++v) {
                if (v == g.edge(e).tail || v == g.edge(e).head) continue;
                for (int a = 0; a < 3; ++a) {
                    ASSERT_EQ(m.entries(e, *m.translation_column(v, a)), 0);
                    for (int b = a + 1; b < 3; ++b) ASSERT_EQ(m.entries(e, *m.rotation_column(v, a, b)), 0);
                }
            }
        }
    }
}

TEST(RigidityMatrix, TrivialMotionsAreInTheKernel) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int d = 2 + static_cast<int>(seed % 2);
        const int n = 1 + static_cast<int>(seed % 4);
        auto g = random_graph(d, n, 10, seed);
        if (seed % 3 == 0) {
            std::vector<int> weights;
            for (int v = 0; v < n; ++v) weights.push_back(coord(rng) & 1 ? d : 1 + static_cast<int>(seed + static_cast<std::uint64_t>(v)) % d);
            g = QuotientGraph(d, n, g.edges(), weights);
        }
        const auto r = random_realization(g, rng);
        const auto m = build_matrix(g, r, Pinning::none);
        Point t(static_cast<std::size_t>(d));
        for (auto& x : t) x = coord(rng);
        std::vector<Rational> w(static_cast<std::size_t>(choose2(d)));
        for (auto& x : w) x = coord(rng);
        const auto motion = trivial_motion(g, r, m, t, w);
        const auto image = multiply(m.entries, motion);
        for (const auto& x : image) ASSERT_EQ(x, 0) << "seed " << seed;
    }
}

TEST(RigidityMatrix, Errors) {
    const QuotientGraph g(2, 2, {bar(0, 1, {0, 0}, pt({1, 1}), pt({1, 1}))});
    try {
        build_matrix(g, realization_from_graph(g, RationalMatrix::identity(2)));
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("edges[0]"), std::string::npos);
    }
    const QuotientGraph ok(2, 2, {bar(0, 1, {1, 0}, pt({0, 0}), pt({0, 0}))});
    EXPECT_THROW(build_matrix(ok, realization_from_graph(ok, RationalMatrix(2, 2))), std::invalid_argument);
    EXPECT_THROW(realization_from_graph(seven_edge_example(), RationalMatrix::identity(2)), GraphError);
    const QuotientGraph plate(2, 2, {bar(0, 1, {1, 0}, pt({0, 1}), pt({0, 0}))}, std::vector<int>{1, 2});
    EXPECT_THROW(build_matrix(plate, realization_from_graph(plate, RationalMatrix::identity(2))), std::invalid_argument);
}

TEST(ExactRank, SingleVertexFourLoops) {
    const auto g = single_vertex(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::mt19937_64 rng(seed);
        EXPECT_EQ(exact_rank(build_matrix(g, random_realization(g, rng))), 4u);
    }
}

TEST(GenericRank, Examples) {
    auto six = seven_edge_example().edges();
    six.pop_back();
    const QuotientGraph g6(2, 2, six);
    EXPECT_EQ(generic_rank(g6), 6u);
    EXPECT_EQ(generic_rank(QuotientGraph(2, 3, {})), 0u);

    const auto e = bar(0, 1, {1, 0}, pt({1, 2}), pt({0, -1}));
    const QuotientGraph twins(2, 2, {e, e});
    EXPECT_EQ(exact_rank(build_matrix(twins, realization_from_graph(twins, RationalMatrix::identity(2)))), 1u);
    EXPECT_THROW(generic_rank(g6, 0), std::invalid_argument);
}

TEST(GenericRank, MonotoneInTrialsAndInvariantUnderPermutation) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto g = random_graph(2, 3, 11, seed);
        EXPECT_LE(generic_rank(g, 1, seed), generic_rank(g, 3, seed));
        auto edges = g.edges();
        std::reverse(edges.begin(), edges.end());
        EXPECT_EQ(generic_rank(QuotientGraph(2, 3, edges), 3, seed + 1), generic_rank(g, 3, seed));
    }
}

TEST(RigidityMatrix, UnpinnedKernelAndAlternativePinning) {
    // Pinning body 1 versus pinning one translation block and the strictly
    // lower entries of Λ̇: both remove C(d+1,2) columns and give equal rank.
    int rigid = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const int d = 2 + static_cast<int>(seed % 2);
        const int n = 1 + static_cast<int>(seed % 3);
        const auto target = static_cast<std::size_t>((n - 1) * choose2(d + 1) + d * d);
        const auto g = random_graph(d, n, target, seed);
        std::mt19937_64 rng(seed);
        const auto r = random_realization(g, rng);
        const auto fixed = build_matrix(g, r, Pinning::first_body);
        const auto free = build_matrix(g, r, Pinning::none);
        const auto rank = exact_rank(fixed);
        ASSERT_EQ(exact_rank(free), rank);
        ASSERT_EQ(free.entries.cols() - fixed.entries.cols(), static_cast<std::size_t>(choose2(d + 1)));
        const VertexId star = static_cast<VertexId>(seed % static_cast<std::uint64_t>(n));
        std::vector<std::size_t> drop;
        for (int a = 0; a < d; ++a) drop.push_back(*free.translation_column(star, a));
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < a; ++b) drop.push_back(free.lattice_column(a, b));
        ASSERT_EQ(drop.size(), static_cast<std::size_t>(choose2(d + 1)));
        ASSERT_EQ(rank_without_columns(free.entries, drop), rank) << "seed " << seed;
        if (rank == target) {
            ++rigid;
            ASSERT_EQ(free.entries.cols() - rank, static_cast<std::size_t>(choose2(d + 1)));
        }
    }
    EXPECT_GT(rigid, 5);
}

TEST(Archetype, Examples) {
    const auto g = seven_edge_example();
    const auto dec = *decompose_theorem2(g).decomposition;
    const auto arch = archetype_realization(g, dec);
    EXPECT_EQ(arch.scale, 3);
    EXPECT_EQ(arch.realization.lattice, RationalMatrix::identity(2));
    EXPECT_EQ(exact_rank(build_matrix(arch.graph, arch.realization)), 7u);
    EXPECT_EQ(exact_rank(build_matrix(arch.graph, realization_from_graph(arch.graph, RationalMatrix::identity(2)))), 7u);
    EXPECT_THROW(archetype_realization(g, dec, 1), std::invalid_argument);
    EXPECT_THROW(archetype_realization(g, dec, 2), std::invalid_argument);
    EXPECT_EQ(exact_rank(build_matrix(archetype_realization(g, dec, 10).graph, archetype_realization(g, dec, 10).realization)), 7u);

    const auto one = single_vertex(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
    const auto dec1 = *decompose_theorem2(one).decomposition;
    const auto a1 = archetype_realization(one, dec1);
    EXPECT_EQ(exact_rank(build_matrix(a1.graph, a1.realization)), 4u);
    std::vector<GainVector> residual;
    for (EdgeId e : dec1.residual) residual.push_back(a1.graph.edge(e).gain);
    std::sort(residual.begin(), residual.end());
    EXPECT_EQ(residual, (std::vector<GainVector>{{0, 4}, {2, 2}, {4, 0}}));

    auto bad = dec;
    bad.residual.pop_back();
    EXPECT_THROW(archetype_realization(g, bad), std::invalid_argument);
}

TEST(Archetype, FullRankOnDecomposableGraphs) {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 200 && checked < 40; ++seed) {
        const int d = 2 + static_cast<int>(seed % 2);
        const int n = 1 + static_cast<int>(seed % 4);
        const auto target = static_cast<std::size_t>((n - 1) * choose2(d + 1) + d * d);
        const auto g = random_graph(d, n, target, seed, 2);
        const auto r = decompose_theorem2(g);
        if (!r.decomposition) continue;
        ++checked;
        const auto arch = archetype_realization(g, *r.decomposition);
        ASSERT_EQ(exact_rank(build_matrix(arch.graph, arch.realization)), target) << "seed " << seed;
    }
    EXPECT_EQ(checked, 40);
}

TEST(BreakLoop, Formula) {
    const QuotientGraph g(2, 2, {edge(0, 1, {0, 0}), bar(1, 1, {1, 0}, pt({0, 0}), pt({1, 1}))});
    const auto b = break_loop(g, 1, 0, 5);
    const auto& e = b.edge(1);
    EXPECT_EQ(e.tail, 0);
    EXPECT_EQ(e.head, 1);
    EXPECT_EQ(e.gain, (GainVector{5, 0}));
    EXPECT_EQ(*e.q_tail, pt({0, 0}));
    EXPECT_EQ(*e.q_head, pt({5, 5}));
    EXPECT_EQ(b.edge(0), g.edge(0));
    EXPECT_THROW(break_loop(g, 0, 1, 2), std::invalid_argument);
    EXPECT_THROW(break_loop(g, 1, 1, 2), std::invalid_argument);
    EXPECT_THROW(break_loop(g, 1, 0, 0), std::invalid_argument);
}

TEST(BreakLoop, RankPreservedForLargeK) {
    const auto g = with_random_endpoints(seven_edge_example(), 3);
    const auto search = find_rank_preserving_break(g, 2, 1, RationalMatrix::identity(2));
    EXPECT_EQ(search.rank_before, 7u);
    ASSERT_TRUE(search.k);
    EXPECT_EQ(search.rank_after, 7u);
}

TEST(BreakLoop, KeepsSparsity) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = random_graph(2, 4, 9, seed);
        const auto p = SparsityParams::make(3, 2);
        if (!is_sparse(as_multigraph(g), p)) continue;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (!g.edge(e).is_loop()) continue;
            const VertexId target = (g.edge(e).head + 1) % 4;
            ASSERT_TRUE(is_sparse(as_multigraph(break_loop(g, e, target, 3)), p));
        }
    }
}

TEST(ContractToLoops, Examples) {
    const QuotientGraph triangle(2, 3, {edge(0, 1, {1, 0}), edge(1, 2, {0, 1}), edge(2, 0, {1, 1})});
    auto c = contract_to_loops(triangle, 1, 0);
    std::vector<int> loops(3, 0);
    for (const auto& e : c.graph.edges()) {
        ASSERT_TRUE(e.is_loop());
        ++loops[static_cast<std::size_t>(e.head)];
    }
    EXPECT_EQ(loops, (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(c.steps.size(), 3u);
    for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(c.graph.edge(e).gain, triangle.edge(e).gain);

    const auto already = single_vertex(2, {{1, 0}, {0, 1}});
    c = contract_to_loops(already, 2, 0);
    EXPECT_EQ(c.graph, already);
    EXPECT_TRUE(c.steps.empty());

    const QuotientGraph five(2, 3, {edge(0, 1, {1, 0}), edge(1, 2, {0, 1}), edge(0, 2, {1, 1}), edge(1, 1, {1, 0}),
                                    edge(2, 0, {2, 1})});
    ASSERT_TRUE(satisfies_plus_count(five, 1, 2));
    c = contract_to_loops(five, 1, 2);
    EXPECT_TRUE(satisfies_plus_count(c.graph, 1, 2));
    loops.assign(3, 0);
    for (const auto& e : c.graph.edges()) {
        ASSERT_TRUE(e.is_loop());
        ++loops[static_cast<std::size_t>(e.head)];
    }
    for (int k : loops) EXPECT_GE(k, 1);

    const QuotientGraph dense(2, 2, {edge(0, 1, {1, 0}), edge(0, 1, {0, 1}), edge(0, 1, {1, 1})});
    EXPECT_FALSE(satisfies_plus_count(dense, 1, 0));
    EXPECT_THROW(contract_to_loops(dense, 1, 0), std::invalid_argument);
}

TEST(ContractToLoops, RandomCountGraphs) {
    int done = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int a = 1 + static_cast<int>(seed % 3);
        const int b = static_cast<int>(seed % 4);
        const auto g = random_graph(2, 4, static_cast<std::size_t>(a * 4 + b) - seed % 3, seed, 2);
        if (!satisfies_plus_count(g, a, b)) continue;
        const auto c = contract_to_loops(g, a, b);
        ++done;
        for (const auto& e : c.graph.edges()) ASSERT_TRUE(e.is_loop());
        // Checked by enumeration, not by the library predicate.
        const auto m = c.graph.edge_count();
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            const auto f = members(mask, m);
            ASSERT_LE(static_cast<std::int64_t>(f.size()), a * shape_of(c.graph, f).vertices + b);
        }
    }
    EXPECT_GT(done, 20);
}
