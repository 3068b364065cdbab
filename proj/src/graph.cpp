#include "dmc/graph.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <unordered_set>

namespace dmc {

const char* origin_name(Origin o) {
    switch (o) {
        case Origin::base: return "base";
        case Origin::containment_chain: return "containment-chain";
        case Origin::forest_gamma: return "forest-gamma";
    }
    return "?";
}

std::int64_t fresh_edge_id() {
    static std::atomic<std::int64_t> next{1};
    return next.fetch_add(1, std::memory_order_relaxed);
}

std::string UpdateOp::str() const {
    std::ostringstream os;
    switch (kind) {
        case insert_edge: os << "ie " << u << ' ' << v << ' ' << mult; break;
        case delete_edge: os << "de " << u << ' ' << v; break;
        case insert_vertex: os << "iv " << u; break;
        case delete_vertex: os << "dv " << u; break;
    }
    return os.str();
}

void Multigraph::require(VertexId v) const {
    if (!has_vertex(v)) throw UnknownVertex("vertex " + std::to_string(v));
}

void Multigraph::add_vertex(VertexId v) {
    if (has_vertex(v)) throw PreconditionViolated("insert_vertex: " + std::to_string(v) + " already present");
    adj_.emplace(v, std::vector<Half>{});
}

void Multigraph::remove_vertex(VertexId v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownVertex("delete_vertex: " + std::to_string(v));
    if (!it->second.empty())
        throw PreconditionViolated("delete_vertex: " + std::to_string(v) + " is not isolated");
    adj_.erase(it);
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v, int mult, EdgeId eid) {
    if (u == v) throw PreconditionViolated("insert_edge: self-loop at " + std::to_string(u));
    if (mult < 1) throw PreconditionViolated("insert_edge: multiplicity must be positive");
    require(u);
    require(v);
    if (find_edge(u, v))
        throw PreconditionViolated("insert_edge: pair " + std::to_string(u) + "," + std::to_string(v) +
                                   " already present");
    if (eid.id < 0) eid = EdgeId{fresh_edge_id(), Origin::base};
    if (edges_.count(eid.id)) throw PreconditionViolated("insert_edge: edge id reused");
    adj_[u].push_back({v, mult, eid});
    adj_[v].push_back({u, mult, eid});
    edges_.emplace(eid.id, EdgeRec{std::min(u, v), std::max(u, v), mult, eid});
    m_ += mult;
    return eid;
}

static void erase_half(std::vector<Half>& list, VertexId to) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].to == to) {
            list[i] = list.back();
            list.pop_back();
            return;
        }
    }
}

EdgeRec Multigraph::remove_edge(VertexId u, VertexId v) {
    require(u);
    require(v);
    const Half* h = find_edge(u, v);
    if (!h)
        throw PreconditionViolated("delete_edge: pair " + std::to_string(u) + "," + std::to_string(v) +
                                   " absent");
    EdgeRec rec{std::min(u, v), std::max(u, v), h->mult, h->eid};
    erase_half(adj_[u], v);
    erase_half(adj_[v], u);
    edges_.erase(rec.eid.id);
    m_ -= rec.mult;
    return rec;
}

const Half* Multigraph::find_edge(VertexId u, VertexId v) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) return nullptr;
    for (const auto& h : it->second)
        if (h.to == v) return &h;
    return nullptr;
}

const std::vector<Half>& Multigraph::neighbors(VertexId v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw UnknownVertex("vertex " + std::to_string(v));
    return it->second;
}

std::int64_t Multigraph::degree(VertexId v) const {
    std::int64_t d = 0;
    for (const auto& h : neighbors(v)) d += h.mult;
    return d;
}

void Multigraph::apply(const UpdateOp& op) {
    switch (op.kind) {
        case UpdateOp::insert_edge: add_edge(op.u, op.v, op.mult, op.eid); break;
        case UpdateOp::delete_edge: remove_edge(op.u, op.v); break;
        case UpdateOp::insert_vertex: add_vertex(op.u); break;
        case UpdateOp::delete_vertex: remove_vertex(op.u); break;
    }
}

std::optional<EdgeRec> Multigraph::edge_by_id(std::int64_t id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) return std::nullopt;
    return it->second;
}

std::vector<VertexId> Multigraph::vertex_list() const {
    std::vector<VertexId> vs;
    vs.reserve(adj_.size());
    for (const auto& [v, _] : adj_) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::vector<EdgeRec> Multigraph::edge_list() const {
    std::vector<EdgeRec> es;
    es.reserve(edges_.size());
    for (const auto& [_, e] : edges_) es.push_back(e);
    std::sort(es.begin(), es.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return es;
}

std::string Multigraph::serialize() const {
    std::ostringstream os;
    auto es = edge_list();
    os << n() << ' ' << es.size() << '\n';
    for (const auto& e : es) os << e.u << ' ' << e.v << ' ' << e.mult << '\n';
    return os.str();
}

Partition Partition::from_clusters(std::vector<std::vector<VertexId>> cl) {
    Partition p;
    p.clusters = std::move(cl);
    p.canonicalize();
    return p;
}

void Partition::canonicalize() {
    std::erase_if(clusters, [](const auto& c) { return c.empty(); });
    for (auto& c : clusters) std::sort(c.begin(), c.end());
    std::sort(clusters.begin(), clusters.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
    cluster_of.clear();
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (VertexId v : clusters[i]) cluster_of[v] = static_cast<int>(i);
}

std::string Partition::serialize() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        os << i << ':';
        for (VertexId v : clusters[i]) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

std::int64_t volume(const Multigraph& g, const std::vector<VertexId>& S) {
    std::int64_t vol = 0;
    for (VertexId v : S) vol += g.degree(v);
    return vol;
}

std::vector<EdgeRec> boundary(const Multigraph& g, const std::vector<VertexId>& S) {
    std::unordered_set<VertexId> in(S.begin(), S.end());
    std::vector<EdgeRec> out;
    for (VertexId v : S)
        for (const auto& h : g.neighbors(v))
            if (!in.count(h.to)) out.push_back({std::min(v, h.to), std::max(v, h.to), h.mult, h.eid});
    return out;
}

Multigraph induced(const Multigraph& g, const std::vector<VertexId>& S) {
    std::unordered_set<VertexId> in(S.begin(), S.end());
    Multigraph h;
    for (VertexId v : S) {
        if (!g.has_vertex(v)) throw UnknownVertex("vertex " + std::to_string(v));
        h.add_vertex(v);
    }
    for (VertexId v : S)
        for (const auto& e : g.neighbors(v))
            if (v < e.to && in.count(e.to)) h.add_edge(v, e.to, e.mult, e.eid);
    return h;
}

std::vector<EdgeRec> intercluster_edges(const Multigraph& g, const Partition& p) {
    std::vector<EdgeRec> out;
    for (const auto& [v, list] : g.adjacency()) {
        auto cv = p.cluster_of.find(v);
        if (cv == p.cluster_of.end()) throw UnknownVertex("vertex " + std::to_string(v) + " not in partition");
        for (const auto& h : list) {
            if (v > h.to) continue;
            auto cw = p.cluster_of.find(h.to);
            if (cw == p.cluster_of.end()) throw UnknownVertex("vertex " + std::to_string(h.to));
            if (cv->second != cw->second) out.push_back({v, h.to, h.mult, h.eid});
        }
    }
    std::sort(out.begin(), out.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return out;
}

std::int64_t total_mult(const std::vector<EdgeRec>& es) {
    std::int64_t s = 0;
    for (const auto& e : es) s += e.mult;
    return s;
}

}  // namespace dmc
