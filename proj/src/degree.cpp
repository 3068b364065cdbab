#include "dmc/degree.hpp"

#include <algorithm>

namespace dmc {

bool SimpleMirror::has_edge(VertexId u, VertexId w) const { return gadget_.count({u, w}) != 0; }

std::vector<SimpleEdge> SimpleMirror::simple_edges() const {
    std::vector<SimpleEdge> out;
    for (const auto& [key, _] : gadget_)
        if (key.first < key.second) out.push_back({key.first, key.second});
    return out;
}

std::vector<VertexId> SimpleMirror::simple_vertices() const {
    std::vector<VertexId> out;
    for (const auto& [u, _] : lists_) out.push_back(u);
    return out;
}

VertexId SimpleMirror::make_gadget(VertexId u, VertexId w) {
    VertexId id = next_++;
    gadget_[{u, w}] = id;
    owner_[id] = {u, w};
    return id;
}

void SimpleMirror::drop_gadget(VertexId u, VertexId w) {
    auto it = gadget_.find({u, w});
    owner_.erase(it->second);
    gadget_.erase(it);
}

UpdateSeq SimpleMirror::apply(const SimpleOp& op) {
    const int chain = c_ + 1;
    UpdateSeq seq;
    VertexId u = op.u, w = op.w;
    switch (op.kind) {
        case SimpleOp::insert_vertex: {
            if (has_vertex(u)) throw PreconditionViolated("simple vertex already present");
            lists_[u] = {u};
            seq.push_back(UpdateOp::iv(make_gadget(u, u)));
            return seq;
        }
        case SimpleOp::delete_vertex: {
            if (!has_vertex(u)) throw PreconditionViolated("simple vertex absent");
            if (lists_[u].size() != 1) throw PreconditionViolated("simple vertex not isolated");
            seq.push_back(UpdateOp::dv(gadget(u, u)));
            drop_gadget(u, u);
            lists_.erase(u);
            return seq;
        }
        case SimpleOp::insert_edge: {
            if (u == w || !has_vertex(u) || !has_vertex(w) || has_edge(u, w))
                throw PreconditionViolated("simple insert (" + std::to_string(u) + "," + std::to_string(w) + ")");
            VertexId u1 = lists_[u].back(), w1 = lists_[w].back();
            VertexId a = make_gadget(u, w), b = make_gadget(w, u);
            seq.push_back(UpdateOp::iv(a));
            seq.push_back(UpdateOp::iv(b));
            seq.push_back(UpdateOp::ie(a, b, 1));
            seq.push_back(UpdateOp::ie(a, gadget(u, u1), chain));
            seq.push_back(UpdateOp::ie(b, gadget(w, w1), chain));
            lists_[u].push_back(w);
            lists_[w].push_back(u);
            return seq;
        }
        case SimpleOp::delete_edge: {
            if (!has_edge(u, w))
                throw PreconditionViolated("simple delete (" + std::to_string(u) + "," + std::to_string(w) + ")");
            auto& lu = lists_[u];
            auto& lw = lists_[w];
            auto pu = std::find(lu.begin(), lu.end(), w) - lu.begin();
            auto pw = std::find(lw.begin(), lw.end(), u) - lw.begin();
            VertexId a = gadget(u, w), b = gadget(w, u);
            VertexId u1 = gadget(u, lu[pu - 1]), w1 = gadget(w, lw[pw - 1]);
            bool has_u2 = pu + 1 < static_cast<std::ptrdiff_t>(lu.size());
            bool has_w2 = pw + 1 < static_cast<std::ptrdiff_t>(lw.size());
            VertexId u2 = has_u2 ? gadget(u, lu[pu + 1]) : -1;
            VertexId w2 = has_w2 ? gadget(w, lw[pw + 1]) : -1;
            seq.push_back(UpdateOp::de(a, b));
            seq.push_back(UpdateOp::de(a, u1));
            if (has_u2) seq.push_back(UpdateOp::de(a, u2));
            seq.push_back(UpdateOp::de(b, w1));
            if (has_w2) seq.push_back(UpdateOp::de(b, w2));
            if (has_w2) seq.push_back(UpdateOp::ie(w1, w2, chain));
            if (has_u2) seq.push_back(UpdateOp::ie(u1, u2, chain));
            seq.push_back(UpdateOp::dv(a));
            seq.push_back(UpdateOp::dv(b));
            lu.erase(lu.begin() + pu);
            lw.erase(lw.begin() + pw);
            drop_gadget(u, w);
            drop_gadget(w, u);
            return seq;
        }
    }
    return seq;
}

std::pair<Multigraph, SimpleMirror> degree_reduce(const std::vector<VertexId>& vertices,
                                                  const std::vector<SimpleEdge>& edges, int c) {
    if (c < 1) throw PreconditionViolated("degree_reduce: c must be positive");
    SimpleMirror mirror(c);
    Multigraph g;
    std::vector<VertexId> vs = vertices;
    std::sort(vs.begin(), vs.end());
    for (VertexId u : vs) g.apply(mirror.apply({SimpleOp::insert_vertex, u, 0}));
    for (const auto& e : edges) g.apply(mirror.apply({SimpleOp::insert_edge, e.u, e.w}));
    return {std::move(g), std::move(mirror)};
}

std::vector<SimpleEdge> lift_cutset(const SimpleMirror& mirror, const std::vector<EdgeRec>& cutset) {
    std::vector<SimpleEdge> out;
    for (const auto& e : cutset) {
        auto [u, w] = mirror.owner(e.u);
        auto [w2, u2] = mirror.owner(e.v);
        if (e.mult != 1 || u != u2 || w != w2 || u == w)
            throw NonLiftableEdge("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is a chain edge");
        out.push_back({std::min(u, w), std::max(u, w)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dmc
