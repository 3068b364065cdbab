#include "dmc/local.hpp"

#include <algorithm>
#include <limits>

namespace dmc {

LocalGraph LocalGraph::induced(const Multigraph& g, const std::vector<VertexId>& S) {
    LocalGraph lg;
    lg.ids = S;
    lg.index.reserve(S.size() * 2);
    for (int i = 0; i < static_cast<int>(S.size()); ++i) lg.index.emplace(S[i], i);
    lg.adj.assign(S.size(), {});
    lg.deg.assign(S.size(), 0);
    for (int i = 0; i < static_cast<int>(S.size()); ++i) {
        for (const auto& h : g.neighbors(S[i])) {
            auto it = lg.index.find(h.to);
            if (it == lg.index.end() || it->second < i) continue;
            int j = it->second;
            int e = static_cast<int>(lg.edges.size());
            lg.edges.push_back({i, j, h.mult, h.eid});
            lg.adj[i].push_back({j, h.mult, e});
            lg.adj[j].push_back({i, h.mult, e});
            lg.deg[i] += h.mult;
            lg.deg[j] += h.mult;
            lg.vol += 2 * static_cast<std::int64_t>(h.mult);
        }
    }
    // adjacency order must not depend on hash iteration
    for (auto& a : lg.adj)
        std::sort(a.begin(), a.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
    return lg;
}

std::vector<VertexId> LocalGraph::to_ids(const std::vector<int>& local) const {
    std::vector<VertexId> out;
    out.reserve(local.size());
    for (int i : local) out.push_back(ids[i]);
    std::sort(out.begin(), out.end());
    return out;
}

int LocalGraph::components(std::vector<int>& label, const std::vector<char>* removed) const {
    label.assign(n(), -1);
    int count = 0;
    std::vector<int> stack;
    for (int s = 0; s < n(); ++s) {
        if (label[s] >= 0) continue;
        label[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& a : adj[x]) {
                if (removed && (*removed)[a.edge]) continue;
                if (label[a.to] < 0) {
                    label[a.to] = count;
                    stack.push_back(a.to);
                }
            }
        }
        ++count;
    }
    return count;
}

std::vector<std::int64_t> capped_caps(const LocalGraph& g, std::int64_t cap) {
    std::vector<std::int64_t> c(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) c[e] = std::min<std::int64_t>(g.edges[e].mult, cap);
    return c;
}

FlowResult max_flow(const LocalGraph& g, const std::vector<std::int64_t>& cap, const std::vector<int>& sources,
                    const std::vector<int>& sinks, std::int64_t limit) {
    const int n = g.n();
    // flow[e] > 0 means flow from edges[e].a to edges[e].b
    std::vector<std::int64_t> flow(g.edges.size(), 0);
    std::vector<char> is_src(n, 0), is_snk(n, 0);
    for (int s : sources) is_src[s] = 1;
    for (int t : sinks) is_snk[t] = 1;
    FlowResult res;
    std::vector<int> via(n), queue;
    queue.reserve(n);
    auto residual = [&](int from, int e) {
        const auto& ed = g.edges[e];
        return from == ed.a ? cap[e] - flow[e] : cap[e] + flow[e];
    };
    while (res.value < limit) {
        std::fill(via.begin(), via.end(), -2);
        queue.clear();
        for (int s : sources) {
            via[s] = -1;
            queue.push_back(s);
        }
        int hit = -1;
        for (std::size_t qi = 0; qi < queue.size() && hit < 0; ++qi) {
            int x = queue[qi];
            for (const auto& a : g.adj[x]) {
                if (via[a.to] != -2 || residual(x, a.edge) <= 0) continue;
                via[a.to] = a.edge;
                if (is_snk[a.to]) {
                    hit = a.to;
                    break;
                }
                queue.push_back(a.to);
            }
        }
        if (hit < 0) {
            res.source_side.assign(n, 0);
            for (int i = 0; i < n; ++i) res.source_side[i] = via[i] != -2;
            return res;
        }
        std::int64_t push = limit - res.value;
        for (int x = hit; via[x] >= 0;) {
            int e = via[x];
            int from = g.edges[e].a == x ? g.edges[e].b : g.edges[e].a;
            push = std::min(push, residual(from, e));
            x = from;
        }
        for (int x = hit; via[x] >= 0;) {
            int e = via[x];
            int from = g.edges[e].a == x ? g.edges[e].b : g.edges[e].a;
            flow[e] += from == g.edges[e].a ? push : -push;
            x = from;
        }
        res.value += push;
    }
    // limit reached: report reachability anyway so callers can inspect it
    std::fill(via.begin(), via.end(), -2);
    queue.clear();
    for (int s : sources) {
        via[s] = -1;
        queue.push_back(s);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (const auto& a : g.adj[x])
            if (via[a.to] == -2 && residual(x, a.edge) > 0) {
                via[a.to] = a.edge;
                queue.push_back(a.to);
            }
    }
    res.source_side.assign(n, 0);
    for (int i = 0; i < n; ++i) res.source_side[i] = via[i] != -2;
    return res;
}

}  // namespace dmc
