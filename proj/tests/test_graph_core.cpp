#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dmc/degree.hpp"
#include "dmc/graph.hpp"
#include "dmc/oracle.hpp"

using namespace dmc;

namespace {

Multigraph cycle(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
    return g;
}

}  // namespace

TEST(GraphCore, InsertEdgeOnEmptyPair) {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.apply(UpdateOp::ie(0, 1, 5));
    ASSERT_EQ(g.num_triples(), 1u);
    EXPECT_EQ(g.m(), 5);
    EXPECT_EQ(g.find_edge(0, 1)->mult, 5);
    EXPECT_EQ(g.find_edge(1, 0)->mult, 5);
}

TEST(GraphCore, DeleteEdgeRemovesAllMultiplicity) {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 1, 5);
    g.apply(UpdateOp::de(0, 1));
    EXPECT_EQ(g.m(), 0);
    EXPECT_EQ(g.find_edge(0, 1), nullptr);
}

TEST(GraphCore, DeleteNonIsolatedVertexRejected) {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_edge(0, 1, 1);
    EXPECT_THROW(g.apply(UpdateOp::dv(0)), PreconditionViolated);
    EXPECT_THROW(g.apply(UpdateOp::ie(0, 1, 1)), PreconditionViolated);
    EXPECT_THROW(g.apply(UpdateOp::ie(0, 0, 1)), PreconditionViolated);
    EXPECT_THROW(g.apply(UpdateOp::de(0, 7)), UnknownVertex);
}

TEST(GraphCore, EdgeIdsSurviveAndAreNeverRecycled) {
    Multigraph g;
    g.add_vertex(0);
    g.add_vertex(1);
    EdgeId a = g.add_edge(0, 1, 2);
    g.remove_edge(0, 1);
    EdgeId b = g.add_edge(0, 1, 2);
    EXPECT_NE(a.id, b.id);
    ASSERT_TRUE(g.edge_by_id(b.id).has_value());
    EXPECT_FALSE(g.edge_by_id(a.id).has_value());
    EXPECT_EQ(g.edge_by_id(b.id)->mult, 2);
}

TEST(GraphCore, VolumeAndBoundaryOnCycle) {
    auto g = cycle(4);
    EXPECT_EQ(volume(g, {0}), 2);
    EXPECT_EQ(total_mult(boundary(g, {0})), 2);
    EXPECT_TRUE(boundary(g, g.vertex_list()).empty());
    EXPECT_EQ(volume(g, g.vertex_list()), 2 * g.m());
}

TEST(GraphCore, WeightedTriangleVolume) {
    Multigraph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(i);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 2);
    g.add_edge(0, 2, 3);
    // vertex 2 is the shared endpoint of the 2- and 3-edges
    EXPECT_EQ(volume(g, {2}), 5);
}

TEST(GraphCore, SerializeRoundTripsThroughEdgeList) {
    auto g = cycle(5);
    g.add_edge(0, 2, 3);
    auto text = g.serialize();
    EXPECT_EQ(text.substr(0, text.find('\n')), "5 6");
    auto el = g.edge_list();
    EXPECT_TRUE(std::is_sorted(el.begin(), el.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    }));
}

TEST(GraphCore, PartitionIntercluster) {
    auto g = cycle(6);
    auto p = Partition::from_clusters({{0, 1, 2}, {3, 4, 5}});
    auto ic = intercluster_edges(g, p);
    EXPECT_EQ(total_mult(ic), 2);
    EXPECT_EQ(p.cluster_of.at(4), p.cluster_of.at(5));
}

TEST(DegreeReduce, SingleEdgeGadget) {
    const int c = 2;
    auto [g, mirror] = degree_reduce({0, 1}, {{0, 1}}, c);
    ASSERT_EQ(g.n(), 4u);
    VertexId uw = mirror.gadget(0, 1), wu = mirror.gadget(1, 0);
    VertexId uu = mirror.gadget(0, 0), ww = mirror.gadget(1, 1);
    ASSERT_NE(g.find_edge(uw, wu), nullptr);
    EXPECT_EQ(g.find_edge(uw, wu)->mult, 1);
    EXPECT_EQ(g.find_edge(uu, uw)->mult, c + 1);
    EXPECT_EQ(g.find_edge(ww, wu)->mult, c + 1);
    EXPECT_EQ(g.num_triples(), 3u);
}

TEST(DegreeReduce, IsolatedVertex) {
    auto [g, mirror] = degree_reduce({7}, {}, 1);
    EXPECT_EQ(g.n(), 1u);
    EXPECT_EQ(g.m(), 0);
    EXPECT_TRUE(g.has_vertex(mirror.gadget(7, 7)));
}

TEST(DegreeReduce, InsertIntoEdgelessEmitsFiveOps) {
    auto [g, mirror] = degree_reduce({0, 1}, {}, 1);
    auto seq = reduce_update(mirror, {SimpleOp::insert_edge, 0, 1});
    ASSERT_EQ(seq.size(), 5u);
    EXPECT_EQ(seq[0].kind, UpdateOp::insert_vertex);
    EXPECT_EQ(seq[1].kind, UpdateOp::insert_vertex);
    for (int i = 2; i < 5; ++i) EXPECT_EQ(seq[i].kind, UpdateOp::insert_edge);
    g.apply(seq);
    EXPECT_EQ(g.n(), 4u);
}

TEST(DegreeReduce, DeleteOnlyEdgeEndsWithGadgetRemoval) {
    auto [g, mirror] = degree_reduce({0, 1}, {{0, 1}}, 1);
    VertexId a = mirror.gadget(0, 1), b = mirror.gadget(1, 0);
    auto seq = reduce_update(mirror, {SimpleOp::delete_edge, 0, 1});
    ASSERT_GE(seq.size(), 2u);
    EXPECT_EQ(seq[seq.size() - 2].kind, UpdateOp::delete_vertex);
    EXPECT_EQ(seq[seq.size() - 2].u, a);
    EXPECT_EQ(seq.back().kind, UpdateOp::delete_vertex);
    EXPECT_EQ(seq.back().u, b);
    for (const auto& op : seq) EXPECT_NE(op.kind, UpdateOp::insert_edge);
    g.apply(seq);
    EXPECT_EQ(g.n(), 2u);
    EXPECT_EQ(g.m(), 0);
}

TEST(DegreeReduce, InsertDeleteRoundTrip) {
    auto [g, mirror] = degree_reduce({0, 1, 2}, {{0, 1}, {1, 2}}, 2);
    auto before = g.edge_list();
    g.apply(reduce_update(mirror, {SimpleOp::insert_edge, 0, 2}));
    g.apply(reduce_update(mirror, {SimpleOp::delete_edge, 0, 2}));
    auto after = g.edge_list();
    ASSERT_EQ(before.size(), after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_EQ(before[i].u, after[i].u);
        EXPECT_EQ(before[i].v, after[i].v);
        EXPECT_EQ(before[i].mult, after[i].mult);
    }
}

TEST(DegreeReduce, MiddleDeletionReconnectsChain) {
    // u=0 has list 0,1,2,3; deleting (0,2) must splice the chain around v_{0,2}
    auto [g, mirror] = degree_reduce({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}, 1);
    VertexId g01 = mirror.gadget(0, 1), g03 = mirror.gadget(0, 3);
    g.apply(reduce_update(mirror, {SimpleOp::delete_edge, 0, 2}));
    ASSERT_NE(g.find_edge(g01, g03), nullptr);
    EXPECT_EQ(g.find_edge(g01, g03)->mult, 2);
}

TEST(DegreeReduce, LiftCutset) {
    auto [g, mirror] = degree_reduce({0, 1}, {{0, 1}}, 1);
    VertexId a = mirror.gadget(0, 1), b = mirror.gadget(1, 0);
    auto e = *g.find_edge(a, b);
    EdgeRec rec{std::min(a, b), std::max(a, b), e.mult, e.eid};
    auto lifted = lift_cutset(mirror, {rec});
    ASSERT_EQ(lifted.size(), 1u);
    EXPECT_EQ(lifted[0], (SimpleEdge{0, 1}));
    EXPECT_TRUE(lift_cutset(mirror, {}).empty());
    VertexId uu = mirror.gadget(0, 0);
    auto ch = *g.find_edge(uu, a);
    EXPECT_THROW(lift_cutset(mirror, {{std::min(uu, a), std::max(uu, a), ch.mult, ch.eid}}), NonLiftableEdge);
}

TEST(DegreeReduce, BoundedDegreeAndPreservedMinCut) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + trial % 5, c = 1 + trial % 3;
        std::vector<VertexId> vs;
        for (int i = 0; i < n; ++i) vs.push_back(i);
        std::vector<SimpleEdge> es;
        Multigraph simple;
        for (int i = 0; i < n; ++i) simple.add_vertex(i);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) {
                    es.push_back({i, j});
                    simple.add_edge(i, j, 1);
                }
        auto [g, mirror] = degree_reduce(vs, es, c);
        for (VertexId v : g.vertex_list()) EXPECT_LE(g.neighbors(v).size(), 3u);
        auto a = oracle::brute_min_cut(simple);
        auto b = oracle::brute_min_cut(g);
        EXPECT_EQ(std::min<std::int64_t>(a.min_cut_size, c + 1), std::min<std::int64_t>(b.min_cut_size, c + 1));
    }
}
