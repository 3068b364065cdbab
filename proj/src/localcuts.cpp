#include "dmc/localcuts.hpp"

#include <algorithm>
#include <limits>
#include <json.hpp>
#include <sstream>

namespace dmc {

Multigraph AuxGraph::materialize(const Multigraph& g) const {
    Multigraph out = g;
    for (const auto& [id, t] : special) {
        out.add_vertex(t);
        for (VertexId x : terminals.at(id)) out.add_edge(t, x, 1);
    }
    return out;
}

std::string AuxGraph::canonical(const Multigraph& g) const {
    auto name = [&](VertexId v) {
        if (!is_special(v)) return std::to_string(v);
        int id = cluster_of.at(v);
        return "t" + std::to_string(members.at(id).front());
    };
    std::vector<std::string> lines;
    for (const auto& e : g.edge_list())
        lines.push_back(name(e.u) + " " + name(e.v) + " " + std::to_string(e.mult));
    for (const auto& [id, t] : special) {
        lines.push_back("v " + name(t));
        for (VertexId x : terminals.at(id)) lines.push_back(name(t) + " " + name(x) + " 1");
    }
    for (VertexId v : g.vertex_list()) lines.push_back("v " + name(v) + " c" + std::to_string(members.at(cluster_of.at(v)).front()));
    std::sort(lines.begin(), lines.end());
    std::string s;
    for (auto& l : lines) s += l + "\n";
    return s;
}

void update_aux(AuxGraph& aux, const Multigraph& g, const std::map<int, std::vector<VertexId>>& clusters,
                const std::set<int>& touched) {
    for (int id : touched) {
        auto it = aux.members.find(id);
        if (it == aux.members.end()) continue;
        for (VertexId v : it->second) {
            auto c = aux.cluster_of.find(v);
            if (c != aux.cluster_of.end() && c->second == id) aux.cluster_of.erase(c);
        }
        aux.cluster_of.erase(aux.special.at(id));
        aux.special.erase(id);
        aux.terminals.erase(id);
        aux.members.erase(it);
    }
    std::vector<int> fresh;
    for (int id : touched) {
        auto it = clusters.find(id);
        if (it == clusters.end()) continue;
        aux.members[id] = it->second;
        for (VertexId v : it->second) aux.cluster_of[v] = id;
        fresh.push_back(id);
    }
    for (int id : fresh) {
        std::vector<VertexId> term;
        for (VertexId v : aux.members[id])
            for (const auto& h : g.neighbors(v))
                if (aux.cluster_of.at(h.to) != id) {
                    term.push_back(v);
                    break;
                }
        aux.terminals[id] = std::move(term);
        VertexId t = aux.next_special--;
        aux.special[id] = t;
        aux.cluster_of[t] = id;
    }
}

AuxGraph build_aux(const Multigraph& g, const std::map<int, std::vector<VertexId>>& clusters) {
    AuxGraph aux;
    std::set<int> all;
    for (const auto& [id, _] : clusters) all.insert(id);
    update_aux(aux, g, clusters, all);
    return aux;
}

AuxGraph build_aux(const Multigraph& g, const Partition& p) {
    std::map<int, std::vector<VertexId>> cl;
    for (std::size_t i = 0; i < p.clusters.size(); ++i) cl[static_cast<int>(i)] = p.clusters[i];
    return build_aux(g, cl);
}

ClusterView make_view(const AuxGraph& aux, const Multigraph& g, int cluster, int c) {
    ClusterView view;
    view.cluster = cluster;
    LocalGraph& lg = view.lg;
    lg = LocalGraph::induced(g, aux.members.at(cluster));
    const int s = lg.n();
    const VertexId t = aux.special.at(cluster);
    lg.ids.push_back(t);
    lg.index.emplace(t, s);
    lg.adj.emplace_back();
    lg.deg.push_back(0);
    view.special = s;
    view.terminal.assign(s + 1, 0);
    view.terminal[s] = 1;
    for (VertexId x : aux.terminals.at(cluster)) {
        int xi = lg.index.at(x);
        int e = static_cast<int>(lg.edges.size());
        lg.edges.push_back({xi, s, 1, EdgeId{-1, Origin::base}});
        lg.adj[xi].push_back({s, 1, e});
        lg.adj[s].push_back({xi, 1, e});
        lg.deg[xi] += 1;
        lg.deg[s] += 1;
        lg.vol += 2;
        view.terminal[xi] = 1;
    }
    view.terminal_count = static_cast<int>(aux.terminals.at(cluster).size()) + 1;

    // an edge whose endpoints are more than c-connected never crosses a cut of size <= c
    view.cuttable.assign(lg.edges.size(), 0);
    auto caps = capped_caps(lg, c + 1);
    for (std::size_t e = 0; e < lg.edges.size(); ++e) {
        const auto& le = lg.edges[e];
        if (le.b == s || le.mult > c) continue;
        if (std::min(lg.deg[le.a], lg.deg[le.b]) <= c ||
            max_flow(lg, caps, {le.a}, {le.b}, c + 1).value <= c)
            view.cuttable[e] = 1;
    }
    return view;
}

namespace {

struct Enumerator {
    const ClusterView& view;
    const LocalGraph& lg;
    int root;
    std::int64_t limit;
    int c;
    const std::vector<char>* forbidden;
    std::vector<char> removed;
    std::vector<int> fl;
    std::set<std::vector<int>> seen_f;
    std::set<std::vector<int>> found;
    std::vector<int> mark, parent;
    int stamp = 0;

    Enumerator(const ClusterView& v, int r, std::int64_t lim, int cc, const std::vector<char>* forb)
        : view(v), lg(v.lg), root(r), limit(lim), c(cc), forbidden(forb), removed(v.lg.edges.size(), 0),
          mark(v.lg.n(), 0), parent(v.lg.n(), -1) {}

    void branch(const std::vector<int>& edges, int rem) {
        for (int e : edges) {
            if (!view.cuttable[e] || lg.edges[e].mult > rem) continue;
            removed[e] = 1;
            fl.push_back(e);
            run(rem - lg.edges[e].mult);
            fl.pop_back();
            removed[e] = 0;
        }
    }

    // BFS from the root in G minus F.  Each recursive call commits one more edge to the boundary of U.
    void run(int rem) {
        std::vector<int> key = fl;
        std::sort(key.begin(), key.end());
        if (!seen_f.insert(std::move(key)).second) return;

        ++stamp;
        std::vector<int> order{root}, tree;
        mark[root] = stamp;
        parent[root] = -1;
        std::int64_t vol = lg.deg[root];
        bool exceeded = vol > limit;
        for (std::size_t qi = 0; qi < order.size() && !exceeded; ++qi) {
            int x = order[qi];
            for (const auto& a : lg.adj[x]) {
                if (removed[a.edge] || mark[a.to] == stamp) continue;
                mark[a.to] = stamp;
                parent[a.to] = a.edge;
                if (forbidden && (*forbidden)[a.to]) {
                    // U must exclude this vertex, so it cuts the tree path leading to it
                    std::vector<int> path;
                    for (int y = a.to; parent[y] >= 0;) {
                        int e = parent[y];
                        path.push_back(e);
                        y = lg.edges[e].a == y ? lg.edges[e].b : lg.edges[e].a;
                    }
                    branch(path, rem);
                    return;
                }
                order.push_back(a.to);
                tree.push_back(a.edge);
                vol += lg.deg[a.to];
                if (vol > limit) {
                    exceeded = true;
                    break;
                }
            }
        }
        if (!exceeded) consider(order);
        branch(tree, rem);
    }

void consider(const std::vector<int>& X) {
        int terms = 0, real = 0;
        for (int x : X) {
            terms += view.terminal[x];
            real += x != view.special;
        }
        if (terms != 0 && terms != view.terminal_count) return;
        if (real == 0 || real == lg.n() - 1) return;
        std::vector<int> key = X;
        std::sort(key.begin(), key.end());
        found.insert(std::move(key));
    }
};

LocalCutEntry make_entry(const ClusterView& view, const std::vector<int>& X) {
    const LocalGraph& lg = view.lg;
    std::vector<char> in(lg.n(), 0);
    for (int x : X) in[x] = 1;
    LocalCutEntry e;
    e.cluster = view.cluster;
    for (int x : X) {
        if (x == view.special)
            e.special = lg.ids[x];
        else
            e.U.push_back(lg.ids[x]);
    }
    std::sort(e.U.begin(), e.U.end());
    for (const auto& le : lg.edges) {
        if (in[le.a] == in[le.b]) continue;
        e.cut_size += le.mult;
        e.cutset.push_back({std::min(lg.ids[le.a], lg.ids[le.b]), std::max(lg.ids[le.a], lg.ids[le.b]), le.mult, le.eid});
    }
    return e;
}

std::int64_t volume_limit(std::int64_t alpha) {
    constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 4;
    return alpha > cap ? 3 * cap : 3 * alpha;
}

}  // namespace

std::vector<LocalCutEntry> enumerate_in_view(const ClusterView& view, int v, std::int64_t alpha, int c,
                                             const std::vector<char>* forbidden) {
    Enumerator en(view, v, volume_limit(alpha), c, forbidden);
    en.run(c);
    std::vector<LocalCutEntry> out;
    for (const auto& X : en.found) {
        auto e = make_entry(view, X);
        if (e.cut_size <= c) out.push_back(std::move(e));
    }
    return out;
}

std::vector<LocalCutEntry> enumerate_cuts(const AuxGraph& aux, const Multigraph& g, VertexId v, std::int64_t alpha,
                                          int c) {
    auto it = aux.cluster_of.find(v);
    if (it == aux.cluster_of.end()) throw UnknownVertex("vertex " + std::to_string(v));
    ClusterView view = make_view(aux, g, it->second, c);
    return enumerate_in_view(view, view.lg.index.at(v), alpha, c);
}

std::vector<LocalCutEntry> enumerate_from_roots(const ClusterView& view, const std::vector<int>& roots,
                                                std::int64_t alpha, int c) {
    std::vector<char> forbidden(view.lg.n(), 0);
    std::vector<LocalCutEntry> out;
    for (int r : roots) {
        if (forbidden[r]) continue;
        for (auto& e : enumerate_in_view(view, r, alpha, c, &forbidden)) out.push_back(std::move(e));
        forbidden[r] = 1;
    }
    return out;
}

namespace {

std::vector<LocalCutEntry> sweep_cluster(const AuxGraph& aux, const Multigraph& g, int id, std::int64_t alpha,
                                         int c) {
    ClusterView view = make_view(aux, g, id, c);
    std::vector<int> roots(view.lg.n());
    for (int v = 0; v < view.lg.n(); ++v) roots[v] = v;
    return enumerate_from_roots(view, roots, alpha, c);
}

}  // namespace

std::vector<LocalCutEntry> sweep_all(const AuxGraph& aux, const Multigraph& g, std::int64_t alpha, int c,
                                     bool parallel) {
    std::vector<int> ids;
    for (const auto& [id, _] : aux.members) ids.push_back(id);
    std::vector<std::vector<LocalCutEntry>> per(ids.size());
    const int n = static_cast<int>(ids.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) per[i] = sweep_cluster(aux, g, ids[i], alpha, c);
    } else {
        for (int i = 0; i < n; ++i) per[i] = sweep_cluster(aux, g, ids[i], alpha, c);
    }
    std::vector<LocalCutEntry> out;
    for (auto& v : per)
        for (auto& e : v) out.push_back(std::move(e));
    return out;
}

bool LocalCutQueue::insert(LocalCutEntry e) {
    Key k{e.U, e.special != 0};
    if (by_u_.count(k)) return false;
    order_.insert({e.cut_size, k});
    for (VertexId v : e.U) index_[v].insert(k);
    if (e.special) index_[e.special].insert(k);
    by_u_.emplace(std::move(k), std::move(e));
    return true;
}

void LocalCutQueue::remove_vertex(VertexId v) {
    auto it = index_.find(v);
    if (it == index_.end()) return;
    std::set<Key> keys = std::move(it->second);
    index_.erase(it);
    for (const Key& k : keys) {
        auto e = by_u_.find(k);
        if (e == by_u_.end()) continue;
        order_.erase({e->second.cut_size, k});
        auto drop = [&](VertexId u) {
            if (u == v) return;
            auto ix = index_.find(u);
            if (ix == index_.end()) return;
            ix->second.erase(k);
            if (ix->second.empty()) index_.erase(ix);
        };
        for (VertexId u : e->second.U) drop(u);
        if (e->second.special) drop(e->second.special);
        by_u_.erase(e);
    }
}

const LocalCutEntry* LocalCutQueue::min() const {
    if (order_.empty()) return nullptr;
    return &by_u_.at(order_.begin()->second);
}

std::vector<const LocalCutEntry*> LocalCutQueue::ordered() const {
    std::vector<const LocalCutEntry*> out;
    for (const auto& [_, k] : order_) out.push_back(&by_u_.at(k));
    return out;
}

std::vector<std::tuple<std::int64_t, std::vector<VertexId>, bool>> LocalCutQueue::signature() const {
    std::vector<std::tuple<std::int64_t, std::vector<VertexId>, bool>> out;
    for (const auto& [size, k] : order_) out.emplace_back(size, k.first, k.second);
    return out;
}

std::string LocalCutQueue::dump_jsonl() const {
    std::ostringstream os;
    for (const auto* e : ordered()) {
        nlohmann::json j;
        j["cluster"] = e->cluster;
        j["cut_size"] = e->cut_size;
        auto U = e->U;
        if (e->special) U.insert(U.begin(), e->special);
        j["U"] = U;
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace dmc
