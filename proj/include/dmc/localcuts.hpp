#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dmc/graph.hpp"
#include "dmc/local.hpp"

namespace dmc {

// G plus one special terminal t_P per cluster, adjacent with multiplicity 1 to every terminal of P.
// The base graph is not copied; views are cut out of it on demand.
struct AuxGraph {
    std::map<int, std::vector<VertexId>> members;    // sorted
    std::map<int, std::vector<VertexId>> terminals;  // sorted, real terminals only
    std::map<int, VertexId> special;                 // cluster -> t_P (negative)
    std::unordered_map<VertexId, int> cluster_of;    // real vertices and t_P
    VertexId next_special = -1;

    bool is_special(VertexId v) const { return v < 0; }
    Multigraph materialize(const Multigraph& g) const;
    // Canonical text of G_* with t_P renamed after its cluster's smallest member.
    std::string canonical(const Multigraph& g) const;
};

AuxGraph build_aux(const Multigraph& g, const Partition& p);
AuxGraph build_aux(const Multigraph& g, const std::map<int, std::vector<VertexId>>& clusters);
// `touched` names clusters (old or new ids) whose membership or terminals may have changed.
void update_aux(AuxGraph& aux, const Multigraph& g, const std::map<int, std::vector<VertexId>>& clusters,
                const std::set<int>& touched);

// G_*[P_*] in dense form; t_P is the last local vertex.
struct ClusterView {
    int cluster = -1;
    LocalGraph lg;
    int special = -1;
    std::vector<char> terminal;  // includes t_P
    int terminal_count = 0;
    std::vector<char> cuttable;  // per edge: may lie in a cut of size <= c
};

ClusterView make_view(const AuxGraph& aux, const Multigraph& g, int cluster, int c);

struct LocalCutEntry {
    int cluster = -1;
    std::vector<VertexId> U;  // real vertices, sorted
    VertexId special = 0;     // t_P when U contains it, else 0
    std::int64_t cut_size = 0;
    std::vector<EdgeRec> cutset;  // edges of G leaving U inside the cluster
};

// Every set U containing v as required by the local-cut definition; U includes t_P when `special` is set.
std::vector<LocalCutEntry> enumerate_cuts(const AuxGraph& aux, const Multigraph& g, VertexId v, std::int64_t alpha,
                                          int c);
// With `forbidden`, only sets avoiding the flagged vertices are produced.
std::vector<LocalCutEntry> enumerate_in_view(const ClusterView& view, int v, std::int64_t alpha, int c,
                                             const std::vector<char>* forbidden = nullptr);
// Every qualifying set containing at least one root, each reported once.
std::vector<LocalCutEntry> enumerate_from_roots(const ClusterView& view, const std::vector<int>& roots,
                                                std::int64_t alpha, int c);

class LocalCutQueue {
public:
    using Key = std::pair<std::vector<VertexId>, bool>;

    bool insert(LocalCutEntry e);  // false when U is already present
    void remove_vertex(VertexId v);
    const LocalCutEntry* min() const;
    std::size_t size() const { return by_u_.size(); }
    bool empty() const { return by_u_.empty(); }
    std::vector<const LocalCutEntry*> ordered() const;
    // (cut_size, U, has t_P) triples; independent of t_P ids, so comparable across rebuilds.
    std::vector<std::tuple<std::int64_t, std::vector<VertexId>, bool>> signature() const;
    std::string dump_jsonl() const;

private:
    std::map<Key, LocalCutEntry> by_u_;
    std::set<std::pair<std::int64_t, Key>> order_;
    std::unordered_map<VertexId, std::set<Key>> index_;
};

// Full sweep over every vertex of every cluster, OpenMP over clusters when `parallel` is set.
std::vector<LocalCutEntry> sweep_all(const AuxGraph& aux, const Multigraph& g, std::int64_t alpha, int c,
                                     bool parallel);

}  // namespace dmc
