#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <variant>

#include "dmc/expander.hpp"

using namespace dmc;

namespace {

Multigraph cycle(int n, int mult = 1) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, mult);
    return g;
}

Multigraph complete(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j, 1);
    return g;
}

Multigraph two_triangles() {
    Multigraph g;
    for (int i = 0; i < 6; ++i) g.add_vertex(i);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(0, 2, 1);
    g.add_edge(3, 4, 1);
    g.add_edge(4, 5, 1);
    g.add_edge(3, 5, 1);
    g.add_edge(2, 3, 1);
    return g;
}

Multigraph random_graph(std::mt19937_64& rng, int n, double p) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j, 1 + static_cast<int>(rng() % 2));
    return g;
}

}  // namespace

TEST(Conductance, SmallGraphs) {
    auto c4 = conductance(cycle(4));
    EXPECT_TRUE(c4.exact);
    EXPECT_EQ(c4.lower.num * 2, c4.lower.den);

    Multigraph k2;
    k2.add_vertex(0);
    k2.add_vertex(1);
    k2.add_edge(0, 1, 1);
    EXPECT_DOUBLE_EQ(conductance(k2).lower.value(), 1.0);

    Multigraph two;
    for (int i = 0; i < 4; ++i) two.add_vertex(i);
    two.add_edge(0, 1, 1);
    two.add_edge(2, 3, 1);
    EXPECT_EQ(conductance(two).lower.num, 0);
}

TEST(Conductance, SerialAndParallelKernelsAgree) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto g = random_graph(rng, 6 + t % 8, 0.5);
        auto lg = LocalGraph::whole(g);
        auto a = exhaustive_conductance_serial(lg);
        auto b = exhaustive_conductance_parallel(lg);
        EXPECT_FALSE(a.lower < b.lower);
        EXPECT_FALSE(b.lower < a.lower);
    }
}

TEST(Conductance, LowerNeverExceedsUpper) {
    std::mt19937_64 rng(5);
    ExpanderOptions opt;
    opt.exhaustive_max_n = 0;  // force the approximate path
    for (int t = 0; t < 20; ++t) {
        auto g = random_graph(rng, 12, 0.4);
        auto c = conductance(g, opt);
        auto exact = conductance(g);
        if (c.undefined) continue;
        EXPECT_FALSE(exact.lower < c.lower) << "certified bound above the true conductance";
        EXPECT_FALSE(c.upper < exact.lower);
    }
}

TEST(Decompose, ExpanderStaysWhole) {
    auto d = expander_decompose(complete(6), 0.3, 0.5);
    EXPECT_EQ(d.partition.size(), 1u);
    EXPECT_EQ(d.certificate.intercluster, 0);
}

TEST(Decompose, TwoTrianglesSplit) {
    auto g = two_triangles();
    EXPECT_LT(conductance(g).lower.value(), 1.0 / 3.0);
    auto d = expander_decompose(g, 1.0 / 3.0, 0.5);
    ASSERT_EQ(d.partition.size(), 2u);
    EXPECT_EQ(d.certificate.intercluster, 1);
    EXPECT_EQ(d.partition.clusters[0], (std::vector<VertexId>{0, 1, 2}));
    EXPECT_EQ(d.partition.clusters[1], (std::vector<VertexId>{3, 4, 5}));
}

TEST(Decompose, DisconnectedComponentsStaySeparate) {
    Multigraph g = complete(4);
    for (int i = 10; i < 13; ++i) g.add_vertex(i);
    g.add_edge(10, 11, 1);
    g.add_edge(11, 12, 1);
    g.add_edge(10, 12, 1);
    auto d = expander_decompose(g, 0.2, 0.5);
    for (const auto& cl : d.partition.clusters) {
        bool low = cl.front() < 10, high = cl.back() >= 10;
        EXPECT_FALSE(low && high);
    }
}

TEST(Decompose, RandomOutputsVerify) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 15; ++t) {
        auto g = random_graph(rng, 14, 0.3);
        auto d = expander_decompose(g, 0.1, 1.0);
        auto v = verify_decomposition(g, d.partition, 0.1, 1.0);
        EXPECT_TRUE(std::holds_alternative<DecompositionCertificate>(v));
    }
}

TEST(Decompose, InfeasibleParameters) {
    EXPECT_THROW(expander_decompose(complete(3), 0.0, 0.5), InfeasibleParameters);
    EXPECT_THROW(expander_decompose(two_triangles(), 0.9, 0.0), InfeasibleParameters);
}

TEST(VerifyDecomposition, SingletonsAndBudget) {
    auto g = two_triangles();
    std::vector<std::vector<VertexId>> single;
    for (VertexId v : g.vertex_list()) single.push_back({v});
    auto p = Partition::from_clusters(single);
    EXPECT_TRUE(std::holds_alternative<Violation>(verify_decomposition(g, p, 0.5, 0.5)));
    EXPECT_TRUE(std::holds_alternative<DecompositionCertificate>(verify_decomposition(g, p, 0.5, 1.0)));
}

TEST(VerifyDecomposition, TrianglePartition) {
    auto g = two_triangles();
    auto p = Partition::from_clusters({{0, 1, 2}, {3, 4, 5}});
    EXPECT_TRUE(std::holds_alternative<DecompositionCertificate>(verify_decomposition(g, p, 1.0 / 3.0, 0.5)));
    // a triangle has conductance exactly 1
    EXPECT_TRUE(std::holds_alternative<DecompositionCertificate>(verify_decomposition(g, p, 1.0, 0.5)));
    auto bad = Partition::from_clusters({{0, 1, 2, 3, 4, 5}});
    auto v = verify_decomposition(g, bad, 1.0 / 3.0, 0.5);
    ASSERT_TRUE(std::holds_alternative<Violation>(v));
    EXPECT_EQ(std::get<Violation>(v).cluster, 0);
}

TEST(Prune, NoDeletions) {
    auto r = expander_prune(complete(5), 0.5, {});
    EXPECT_TRUE(r.pruned.empty());
    EXPECT_FALSE(r.fallback);
}

TEST(Prune, OverBudgetRejected) {
    EXPECT_THROW(expander_prune(complete(4), 0.5, {{0, 1}}), TooManyDeletions);
    // C8 has conductance 1/4 and 8 edges, so one deletion is already over phi*m/10
    auto c8 = cycle(8);
    double phi = conductance(c8).lower.value();
    EXPECT_DOUBLE_EQ(phi, 0.25);
    EXPECT_THROW(expander_prune(c8, phi, {{0, 1}}), TooManyDeletions);
}

TEST(Prune, InBudgetBounds) {
    // K12 has conductance 6/11 and 66 edges, so one deletion is within budget
    auto g = complete(12);
    double phi = conductance(g).lower.value();
    auto r = expander_prune(g, phi, {{0, 1}});
    ASSERT_FALSE(r.fallback);
    EXPECT_LE(static_cast<double>(r.vol), 8.0 / phi);
    EXPECT_LE(r.boundary, 4);
    Multigraph gd = g;
    gd.remove_edge(0, 1);
    std::vector<VertexId> rest;
    for (VertexId v : gd.vertex_list())
        if (std::find(r.pruned.begin(), r.pruned.end(), v) == r.pruned.end()) rest.push_back(v);
    auto c = conductance_local(LocalGraph::induced(gd, rest));
    EXPECT_TRUE(c.lower.at_least(phi / 6.0));
}
