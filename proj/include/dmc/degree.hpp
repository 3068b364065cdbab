#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

struct SimpleEdge {
    VertexId u, w;
    friend auto operator<=>(const SimpleEdge&, const SimpleEdge&) = default;
};

struct SimpleOp {
    enum Kind { insert_edge, delete_edge, insert_vertex, delete_vertex } kind;
    VertexId u = 0;
    VertexId w = 0;
};

// Gadget bookkeeping between a simple graph and its bounded-neighbor multigraph.
class SimpleMirror {
public:
    explicit SimpleMirror(int c = 1) : c_(c) {}

    int c() const { return c_; }
    bool has_vertex(VertexId u) const { return lists_.count(u) != 0; }
    bool has_edge(VertexId u, VertexId w) const;
    const std::vector<VertexId>& neighbor_list(VertexId u) const { return lists_.at(u); }
    std::vector<SimpleEdge> simple_edges() const;  // u < w, sorted
    std::vector<VertexId> simple_vertices() const;

    VertexId gadget(VertexId u, VertexId w) const { return gadget_.at({u, w}); }
    // (u,w) for gadget v_{u,w}
    std::pair<VertexId, VertexId> owner(VertexId gv) const { return owner_.at(gv); }

    UpdateSeq apply(const SimpleOp& op);

private:
    friend std::pair<Multigraph, SimpleMirror> degree_reduce(const std::vector<VertexId>&,
                                                             const std::vector<SimpleEdge>&, int);
    VertexId make_gadget(VertexId u, VertexId w);
    void drop_gadget(VertexId u, VertexId w);

    int c_;
    VertexId next_ = 0;
    std::map<VertexId, std::vector<VertexId>> lists_;  // w_{u,0}=u, w_{u,1}, ...
    std::map<std::pair<VertexId, VertexId>, VertexId> gadget_;
    std::map<VertexId, std::pair<VertexId, VertexId>> owner_;
};

std::pair<Multigraph, SimpleMirror> degree_reduce(const std::vector<VertexId>& vertices,
                                                  const std::vector<SimpleEdge>& edges, int c);

inline UpdateSeq reduce_update(SimpleMirror& mirror, const SimpleOp& op) { return mirror.apply(op); }

// Cross edges map back to simple edges; anything heavier is rejected.
std::vector<SimpleEdge> lift_cutset(const SimpleMirror& mirror, const std::vector<EdgeRec>& cutset);

}  // namespace dmc
