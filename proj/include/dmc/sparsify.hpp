#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmc/expander.hpp"
#include "dmc/graph.hpp"

namespace dmc {

// A tree or forest given by its vertices and edges; edges may carry ids of the graph they came from.
struct Forest {
    std::vector<VertexId> vertices;
    std::vector<EdgeRec> edges;
};

struct ConnectingPath {
    std::vector<VertexId> walk;  // endpoint ... endpoint
};

std::vector<ConnectingPath> connecting_paths(const Forest& tree, const std::vector<VertexId>& K);

struct ContractedEdge {
    VertexId a, b;
    std::vector<VertexId> path;
};

struct ContractedForest {
    std::vector<VertexId> vertices;  // sorted
    std::vector<ContractedEdge> edges;
};

ContractedForest contract(const Forest& F, const std::vector<VertexId>& K);

// BFS forest of g minus the listed edges, deterministic in vertex order.
Forest spanning_forest(const Multigraph& g, const std::vector<EdgeRec>& excluded);

struct CutContainmentSet {
    std::vector<EdgeRec> cc;
    Partition refinement;
    std::string strategy;  // trivial | exact | fallback
};

struct ContainmentOptions {
    int exact_max_classes = 10;
};

CutContainmentSet build_containment(const Multigraph& g, const std::vector<VertexId>& T, int c,
                                    const ContainmentOptions& opt = {});
CutContainmentSet containment_fallback(const Multigraph& g);

struct ContainmentViolation {
    std::vector<VertexId> side;  // T'
    std::int64_t min_cut = 0;
    std::int64_t restricted = 0;
};

// nullopt means pass.  Exhaustive over bipartitions unless `samples` is given.
std::optional<ContainmentViolation> validate_containment(const Multigraph& g, const std::vector<VertexId>& T,
                                                         int c, const std::vector<EdgeRec>& CC,
                                                         const std::vector<std::vector<VertexId>>* samples = nullptr);

struct TerminalSparsifier {
    Multigraph h;
    std::unordered_map<VertexId, VertexId> origin;  // h vertex -> g vertex
};

TerminalSparsifier build_sparsifier_cluster(const Multigraph& g, const std::vector<VertexId>& T,
                                            const std::vector<EdgeRec>& CC, const Forest& F, int c,
                                            std::int64_t gamma);

TerminalSparsifier build_sparsifier_partition(const Multigraph& g, const Partition& p,
                                              const std::vector<std::vector<EdgeRec>>& CC,
                                              const std::vector<Forest>& F, int c, std::int64_t gamma);

// "v id origin_gvertex" lines then "e id u v mult origin" lines.
std::string dump_sparsifier(const TerminalSparsifier& s);

struct ECParams {
    int grade = 1;  // c' the containment sets are valid for
    double phi = 0.1;
    std::int64_t gamma = 2;
    double eps = 0.5;
    // When positive, a graph of at most this volume is kept as one uncertified cluster.
    std::int64_t single_volume_cap = 0;
    ExpanderOptions expander;
    ContainmentOptions containment;
};

struct ClusterState {
    std::vector<VertexId> vertices;   // sorted
    std::vector<VertexId> terminals;  // sorted
    std::vector<EdgeRec> cc;
    Forest forest;
    ClusterCert cert{};
    std::string strategy;
    std::vector<VertexId> h_vertices;
    std::vector<EdgeRec> h_edges;
};

struct OneLevelECDS {
    Multigraph g;
    std::map<int, ClusterState> clusters;
    std::unordered_map<VertexId, int> cluster_of;
    Multigraph h;  // the partition sparsifier
    ECParams params;
    int next_cluster = 0;

    Partition partition() const;
    std::vector<VertexId> terminals() const;  // sorted
    const std::vector<VertexId>& terminals_of(int cluster) const { return clusters.at(cluster).terminals; }
    bool is_terminal(VertexId v) const;
    TerminalSparsifier sparsifier() const;
};

OneLevelECDS ec_init(const Multigraph& g, int grade, double phi, std::int64_t gamma, const ECParams& base = {});

struct ECUpdateResult {
    UpdateSeq h_seq;                   // turns the old sparsifier into the new one
    std::vector<VertexId> S;           // terminal symmetric difference
    std::vector<VertexId> region;      // vertices of every cluster that was touched, before and after
    std::vector<int> new_clusters;     // ids of clusters created by the update
    std::vector<int> removed_clusters;
};

// Consumes a structure of grade >= out_grade*(out_grade+2) and leaves one of grade out_grade.
ECUpdateResult ec_update(OneLevelECDS& ds, const UpdateSeq& seq, int out_grade, double out_phi);

// Recomputes the full sparsifier from the stored tuple; used to check incremental maintenance.
Multigraph recompute_sparsifier(const OneLevelECDS& ds);

}  // namespace dmc
