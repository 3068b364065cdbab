#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dmc/errors.hpp"

namespace dmc {

// Real vertices are non-negative; special terminals of auxiliary graphs are negative.
using VertexId = std::int64_t;

enum class Origin : std::uint8_t { base, containment_chain, forest_gamma };

const char* origin_name(Origin o);

struct EdgeId {
    std::int64_t id = -1;
    Origin origin = Origin::base;

    bool liftable() const { return origin != Origin::forest_gamma; }
    friend bool operator==(const EdgeId& a, const EdgeId& b) { return a.id == b.id; }
};

// Process-wide, never recycled.
std::int64_t fresh_edge_id();

struct Half {
    VertexId to;
    int mult;
    EdgeId eid;
};

struct EdgeRec {
    VertexId u, v;  // u < v
    int mult;
    EdgeId eid;
};

struct UpdateOp {
    enum Kind : std::uint8_t { insert_edge, delete_edge, insert_vertex, delete_vertex };
    Kind kind;
    VertexId u = 0;
    VertexId v = 0;
    int mult = 0;
    EdgeId eid{};  // id < 0 on insert means "allocate a fresh base id"

    static UpdateOp ie(VertexId u, VertexId v, int a, EdgeId e = {}) { return {insert_edge, u, v, a, e}; }
    static UpdateOp de(VertexId u, VertexId v) { return {delete_edge, u, v, 0, {}}; }
    static UpdateOp iv(VertexId v) { return {insert_vertex, v, 0, 0, {}}; }
    static UpdateOp dv(VertexId v) { return {delete_vertex, v, 0, 0, {}}; }

    std::string str() const;
};

using UpdateSeq = std::vector<UpdateOp>;

class Multigraph {
public:
    bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
    void add_vertex(VertexId v);
    void remove_vertex(VertexId v);

    EdgeId add_edge(VertexId u, VertexId v, int mult, EdgeId eid = {});
    EdgeRec remove_edge(VertexId u, VertexId v);
    const Half* find_edge(VertexId u, VertexId v) const;

    const std::vector<Half>& neighbors(VertexId v) const;
    std::int64_t degree(VertexId v) const;

    void apply(const UpdateOp& op);
    void apply(const UpdateSeq& seq) {
        for (const auto& op : seq) apply(op);
    }

    std::size_t n() const { return adj_.size(); }
    std::int64_t m() const { return m_; }
    std::size_t num_triples() const { return edges_.size(); }

    std::optional<EdgeRec> edge_by_id(std::int64_t id) const;

    std::vector<VertexId> vertex_list() const;  // sorted
    std::vector<EdgeRec> edge_list() const;     // sorted by (u,v)

    const std::unordered_map<VertexId, std::vector<Half>>& adjacency() const { return adj_; }

    // "n m_lines" header then "u v mult" lines.
    std::string serialize() const;

private:
    void require(VertexId v) const;

    std::unordered_map<VertexId, std::vector<Half>> adj_;
    std::unordered_map<std::int64_t, EdgeRec> edges_;
    std::int64_t m_ = 0;
};

struct Partition {
    std::vector<std::vector<VertexId>> clusters;  // each sorted
    std::unordered_map<VertexId, int> cluster_of;

    static Partition from_clusters(std::vector<std::vector<VertexId>> cl);
    std::size_t size() const { return clusters.size(); }
    std::string serialize() const;  // "i: v1 v2 ..." per line, clusters ordered by smallest member
    void canonicalize();
};

std::int64_t volume(const Multigraph& g, const std::vector<VertexId>& S);
std::vector<EdgeRec> boundary(const Multigraph& g, const std::vector<VertexId>& S);
Multigraph induced(const Multigraph& g, const std::vector<VertexId>& S);
std::vector<EdgeRec> intercluster_edges(const Multigraph& g, const Partition& p);
std::int64_t total_mult(const std::vector<EdgeRec>& es);

}  // namespace dmc
