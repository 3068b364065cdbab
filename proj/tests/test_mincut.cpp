#include <gtest/gtest.h>

#include <random>

#include "dmc/mincut.hpp"
#include "dmc/oracle.hpp"

using namespace dmc;

namespace {

Multigraph cycle(int n) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n, 1);
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

HierarchyConfig zeta(int z) {
    HierarchyConfig cfg;
    cfg.zeta = z;
    return cfg;
}

void expect_same_lambda(const OneLevelMinCutDS& ds) {
    EXPECT_EQ(ds.lambda.signature(), rebuild_lambda(ds).signature());
}

}  // namespace

TEST(Schedule, Recurrence) {
    auto s = schedule_params(3, 1000, zeta(2));
    EXPECT_EQ(s.c, (std::vector<std::int64_t>{255, 15, 3}));
    EXPECT_EQ(s.gamma, 256);
    auto t = schedule_params(1, 1000, zeta(1));
    EXPECT_EQ(t.c, (std::vector<std::int64_t>{3, 1}));
    EXPECT_EQ(t.gamma, 4);
    for (int i = 1; i <= s.zeta; ++i) EXPECT_LT(s.phi[i], s.phi[i - 1]);
    EXPECT_GE(static_cast<double>(s.alpha), s.c[0] / s.phi[s.zeta] - 1e-9);
    EXPECT_THROW(schedule_params(0, 10), PreconditionViolated);
}

TEST(OneLevel, TriangleHasNoOneCuts) {
    Multigraph g = complete(3);
    auto ds = mc_one_init(g, 1, 0.5, 3, 4, 6);
    EXPECT_EQ(ds.ec.clusters.size(), 1u);
    EXPECT_TRUE(ds.lambda.empty());
}

TEST(OneLevel, TwoTrianglesKeepTerminalSide) {
    auto ds = mc_one_init(two_triangles(), 1, 1.0 / 3.0, 3, 4, 9);
    EXPECT_EQ(ds.ec.clusters.size(), 2u);
    EXPECT_TRUE(ds.lambda.empty());
}

TEST(OneLevel, CycleMinimumIsTwo) {
    auto ds = mc_one_init(cycle(6), 2, 0.3, 8, 9, 27);
    ASSERT_EQ(ds.ec.clusters.size(), 1u);
    ASSERT_NE(ds.lambda.min(), nullptr);
    EXPECT_EQ(ds.lambda.min()->cut_size, 2);
}

TEST(OneLevel, ParameterChecks) {
    EXPECT_THROW(mc_one_init(cycle(4), 2, 0.5, 1, 4, 10), ParameterViolation);
    EXPECT_THROW(mc_one_init(cycle(4), 1, 0.5, 3, 4, 5), ParameterViolation);
}

TEST(OneLevel, EmptyUpdate) {
    auto ds = mc_one_init(two_triangles(), 1, 1.0 / 3.0, 3, 4, 9);
    EXPECT_TRUE(mc_one_update(ds, {}, 1, 1.0 / 3.0).empty());
    expect_same_lambda(ds);
}

TEST(OneLevel, DeletingBridge) {
    auto ds = mc_one_init(two_triangles(), 1, 1.0 / 3.0, 3, 4, 9);
    mc_one_update(ds, {UpdateOp::de(2, 3)}, 1, 1.0 / 3.0);
    EXPECT_TRUE(ds.ec.terminals().empty());
    EXPECT_TRUE(ds.lambda.empty());
    expect_same_lambda(ds);
}

TEST(OneLevel, PendantVertexInsideCluster) {
    // 9 is hung off the path so the decomposition keeps it inside the cluster
    Multigraph g;
    for (int i = 0; i < 4; ++i) g.add_vertex(i);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 1);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 0, 1);
    g.add_vertex(9);
    g.add_edge(9, 1, 1);
    auto ds = mc_one_init(g, 1, 0.1, 3, 4, 30);
    ASSERT_EQ(ds.ec.clusters.size(), 1u);
    mc_one_update(ds, {UpdateOp::de(9, 1), UpdateOp::ie(9, 0, 1)}, 1, 0.1);
    expect_same_lambda(ds);
    bool found = false;
    for (const auto& [size, U, special] : ds.lambda.signature())
        if (U == std::vector<VertexId>{9} && size == 1) found = true;
    EXPECT_TRUE(found);
}

TEST(OneLevel, NewVertexStartsAsItsOwnCluster) {
    auto ds = mc_one_init(complete(4), 1, 0.4, 3, 4, 8);
    mc_one_update(ds, {UpdateOp::iv(9), UpdateOp::ie(9, 0, 1)}, 1, 0.4);
    expect_same_lambda(ds);
    EXPECT_EQ(ds.ec.clusters.size(), 2u);
    EXPECT_EQ(ds.ec.terminals(), (std::vector<VertexId>{0, 9}));
}

TEST(MultiLevel, ExpanderIsOneLevel) {
    auto mds = mc_multi_init(complete(6), 2);
    EXPECT_EQ(mds.levels.size(), 1u);
    EXPECT_TRUE(query_min_cut(mds).empty);
}

TEST(MultiLevel, TwoTrianglesStack) {
    HierarchyConfig cfg = zeta(1);
    cfg.phi_floor = 0.3;
    auto mds = mc_multi_init(two_triangles(), 1, cfg);
    ASSERT_GE(mds.levels.size(), 2u);
    EXPECT_EQ(mds.levels[0].ec.clusters.size(), 2u);
    EXPECT_EQ(mds.levels.back().ec.clusters.size(), 1u);
    EXPECT_EQ(mds.levels[1].ec.g.vertex_list(), (std::vector<VertexId>{2, 3}));
}

TEST(MultiLevel, EmptyGraph) {
    auto mds = mc_multi_init(Multigraph{}, 1);
    EXPECT_EQ(mds.levels.size(), 1u);
    EXPECT_TRUE(query_min_cut(mds).empty);
}

TEST(MultiLevel, LongBatchEqualsReinit) {
    std::mt19937_64 rng(2);
    Multigraph g;
    const int n = 20;
    for (int i = 0; i < n; ++i) g.add_vertex(i);
    for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<VertexId>(rng() % i), 1);
    auto mds = mc_multi_init(g, 2, zeta(1));
    UpdateSeq seq;
    Multigraph cur = g;
    while (seq.size() < 12) {
        VertexId a = rng() % n, b = rng() % n;
        if (a == b) continue;
        auto op = cur.find_edge(a, b) ? UpdateOp::de(a, b) : UpdateOp::ie(a, b, 1);
        cur.apply(op);
        seq.push_back(op);
    }
    mc_multi_update(mds, seq);
    auto a = query_min_cut(mds);
    auto b = query_min_cut(mc_multi_init(cur, 2, zeta(1)));
    EXPECT_EQ(a.empty, b.empty);
    if (!a.empty) EXPECT_EQ(a.size, b.size);
    EXPECT_THROW(mc_multi_update(mds, {seq.front()}), ScheduleExhausted);
}

TEST(Query, Examples) {
    auto q = query_min_cut(mc_multi_init(two_triangles(), 1));
    ASSERT_FALSE(q.empty);
    EXPECT_EQ(q.size, 1);
    ASSERT_EQ(q.cutset.size(), 1u);
    EXPECT_EQ(q.cutset[0].u, 2);
    EXPECT_EQ(q.cutset[0].v, 3);

    EXPECT_TRUE(query_min_cut(mc_multi_init(complete(4), 2)).empty);

    auto c = query_min_cut(mc_multi_init(cycle(6), 2));
    ASSERT_FALSE(c.empty);
    EXPECT_EQ(c.size, 2);
    EXPECT_EQ(total_mult(c.cutset), 2);
}

TEST(Query, DisconnectedIsZero) {
    auto g = two_triangles();
    g.remove_edge(2, 3);
    auto q = query_min_cut(mc_multi_init(g, 1));
    ASSERT_FALSE(q.empty);
    EXPECT_EQ(q.size, 0);
    EXPECT_TRUE(q.cutset.empty());
    EXPECT_EQ(q.side_hint.size(), 3u);
    EXPECT_EQ(query_json(q), R"({"cutset":[],"side_hint":[0,1,2],"size":0})");
    EXPECT_EQ(query_json(QueryResult{}), R"({"size":null})");
}

TEST(Pool, WindowConstraint) {
    EXPECT_NO_THROW(fd_init(two_triangles(), 1, 1, 12));
    EXPECT_THROW(fd_init(two_triangles(), 1, 2, 12), ConfigError);
    EXPECT_THROW(fd_init(two_triangles(), 1, 1, 11), ConfigError);
}

TEST(Pool, ToggleStreamMatchesOracle) {
    std::mt19937_64 rng(6);
    UpdateSeq stream;
    Multigraph cur = two_triangles();
    while (stream.size() < 50) {
        VertexId a = rng() % 6, b = rng() % 6;
        if (a == b) continue;
        auto op = cur.find_edge(a, b) ? UpdateOp::de(a, b) : UpdateOp::ie(a, b, 1);
        cur.apply(op);
        stream.push_back(op);
    }
    auto rep = oracle::verify_stream(two_triangles(), stream, 1, 1, 12);
    EXPECT_EQ(rep.checks.size(), 51u);
    EXPECT_EQ(rep.mismatches, 0);
}

TEST(Pool, TwoLevelChainMatchesOracle) {
    std::mt19937_64 rng(13);
    Multigraph g = cycle(12);
    g.add_edge(0, 6, 1);
    UpdateSeq stream;
    Multigraph cur = g;
    while (stream.size() < 90) {
        VertexId a = rng() % 12, b = rng() % 12;
        if (a == b) continue;
        auto op = cur.find_edge(a, b) ? UpdateOp::de(a, b) : UpdateOp::ie(a, b, 1 + static_cast<int>(rng() % 2));
        cur.apply(op);
        stream.push_back(op);
    }
    auto rep = oracle::verify_stream(g, stream, 2, 2, 72);
    EXPECT_EQ(rep.mismatches, 0);
}
