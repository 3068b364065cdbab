#include "dmc/oracle.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

namespace dmc::oracle {

namespace {

// Plain re-indexed copy of the input; nothing here is shared with the engine's kernels.
struct Plain {
    std::vector<VertexId> ids;
    std::map<VertexId, int> at;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj;
    std::vector<EdgeRec> edges;
    std::vector<std::pair<int, int>> ends;

    explicit Plain(const Multigraph& g) {
        ids = g.vertex_list();
        for (int i = 0; i < static_cast<int>(ids.size()); ++i) at[ids[i]] = i;
        adj.resize(ids.size());
        for (const auto& e : g.edge_list()) {
            int a = at.at(e.u), b = at.at(e.v);
            adj[a].push_back({b, e.mult});
            adj[b].push_back({a, e.mult});
            edges.push_back(e);
            ends.push_back({a, b});
        }
    }
    int n() const { return static_cast<int>(ids.size()); }
};

std::vector<int> component_labels(const Plain& p, int& count) {
    std::vector<int> label(p.n(), -1);
    count = 0;
    for (int s = 0; s < p.n(); ++s) {
        if (label[s] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        label[s] = count;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (auto [y, _] : p.adj[x])
                if (label[y] < 0) {
                    label[y] = count;
                    q.push(y);
                }
        }
        ++count;
    }
    return label;
}

OracleResult from_side(const Plain& p, const std::vector<char>& side, std::int64_t value, const char* method) {
    OracleResult r;
    r.min_cut_size = value;
    r.method = method;
    for (std::size_t e = 0; e < p.edges.size(); ++e)
        if (side[p.ends[e].first] != side[p.ends[e].second]) r.witness.push_back(p.edges[e]);
    for (int i = 0; i < p.n(); ++i)
        if (side[i]) r.side.push_back(p.ids[i]);
    return r;
}

}  // namespace

OracleResult exhaustive_min_cut(const Multigraph& g) {
    Plain p(g);
    OracleResult r;
    r.method = "exhaustive";
    if (p.n() <= 1) {
        r.infinite = true;
        return r;
    }
    if (p.n() > 30) throw TooLarge("exhaustive min cut on " + std::to_string(p.n()) + " vertices");
    std::vector<char> side(p.n(), 0), best_side;
    std::int64_t cut = 0, best = std::numeric_limits<std::int64_t>::max();
    const std::uint64_t steps = std::uint64_t{1} << (p.n() - 1);
    for (std::uint64_t k = 1; k < steps; ++k) {
        int x = __builtin_ctzll(k) + 1;  // vertex 0 stays put
        for (auto [y, w] : p.adj[x]) cut += side[y] == side[x] ? w : -w;
        side[x] ^= 1;
        if (cut < best) {
            best = cut;
            best_side = side;
        }
    }
    return from_side(p, best_side, best, "exhaustive");
}

OracleResult stoer_wagner(const Multigraph& g) {
    Plain p(g);
    OracleResult r;
    r.method = "stoer-wagner";
    const int n = p.n();
    if (n <= 1) {
        r.infinite = true;
        return r;
    }
    std::vector<std::unordered_map<int, std::int64_t>> adj(n);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        auto [a, b] = p.ends[e];
        adj[a][b] += p.edges[e].mult;
        adj[b][a] += p.edges[e].mult;
    }
    std::vector<char> alive(n, 1);
    std::vector<std::vector<int>> group(n);
    for (int i = 0; i < n; ++i) group[i] = {i};
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_group;
    std::vector<std::int64_t> key(n);
    std::vector<char> added(n);
    for (int phase = 0; phase < n - 1; ++phase) {
        std::fill(key.begin(), key.end(), 0);
        std::fill(added.begin(), added.end(), 0);
        std::priority_queue<std::pair<std::int64_t, int>> pq;
        int remaining = 0;
        for (int v = 0; v < n; ++v)
            if (alive[v]) {
                pq.push({0, v});
                ++remaining;
            }
        int prev = -1, last = -1;
        for (int k = 0; k < remaining; ++k) {
            int v;
            while (true) {
                auto [kv, x] = pq.top();
                pq.pop();
                if (!added[x] && kv == key[x]) {
                    v = x;
                    break;
                }
            }
            added[v] = 1;
            prev = last;
            last = v;
            for (auto [u, w] : adj[v])
                if (!added[u]) {
                    key[u] += w;
                    pq.push({key[u], u});
                }
        }
        if (key[last] < best) {
            best = key[last];
            best_group = group[last];
        }
        for (auto [u, w] : adj[last]) {
            if (u == prev) continue;
            adj[prev][u] += w;
            adj[u][prev] += w;
            adj[u].erase(last);
        }
        adj[prev].erase(last);
        adj[last].clear();
        alive[last] = 0;
        group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
        group[last].clear();
    }
    std::vector<char> side(n, 0);
    for (int v : best_group) side[v] = 1;
    return from_side(p, side, best, "stoer-wagner");
}

OracleResult brute_min_cut(const Multigraph& g, int exhaustive_max_n) {
    Plain p(g);
    if (p.n() <= 1) {
        OracleResult r;
        r.infinite = true;
        r.method = "exhaustive";
        return r;
    }
    int count = 0;
    auto label = component_labels(p, count);
    if (count > 1) {
        std::vector<char> side(p.n(), 0);
        for (int i = 0; i < p.n(); ++i) side[i] = label[i] == 0;
        OracleResult r = from_side(p, side, 0, "components");
        return r;
    }
    return p.n() <= exhaustive_max_n ? exhaustive_min_cut(g) : stoer_wagner(g);
}

namespace {

// Dinic on a directed residual network built from undirected capacities.
struct Dinic {
    struct Arc {
        int to;
        std::int64_t cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;
    std::vector<int> level, it;

    explicit Dinic(int n) : out(n), level(n), it(n) {}
    void add(int a, int b, std::int64_t c) {
        out[a].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, c});
        out[b].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, c});
    }
    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        q.push(s);
        level[s] = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int a : out[x])
                if (arcs[a].cap > 0 && level[arcs[a].to] < 0) {
                    level[arcs[a].to] = level[x] + 1;
                    q.push(arcs[a].to);
                }
        }
        return level[t] >= 0;
    }
    std::int64_t dfs(int x, int t, std::int64_t f) {
        if (x == t) return f;
        for (int& i = it[x]; i < static_cast<int>(out[x].size()); ++i) {
            int a = out[x][i];
            int y = arcs[a].to;
            if (arcs[a].cap <= 0 || level[y] != level[x] + 1) continue;
            std::int64_t got = dfs(y, t, std::min(f, arcs[a].cap));
            if (got > 0) {
                arcs[a].cap -= got;
                arcs[a ^ 1].cap += got;
                return got;
            }
        }
        return 0;
    }
    std::int64_t run(int s, int t) {
        std::int64_t total = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
        }
        return total;
    }
};

}  // namespace

std::int64_t steiner_min_cut(const Multigraph& g, const std::vector<VertexId>& A, const std::vector<VertexId>& B,
                             std::int64_t cap) {
    if (A.empty() || B.empty()) throw PreconditionViolated("steiner_min_cut: empty side");
    Plain p(g);
    std::vector<int> node(p.n());
    for (int i = 0; i < p.n(); ++i) node[i] = i + 2;
    for (VertexId a : A) node[p.at.at(a)] = 0;
    for (VertexId b : B) {
        int i = p.at.at(b);
        if (node[i] == 0) throw PreconditionViolated("steiner_min_cut: sides overlap");
        node[i] = 1;
    }
    Dinic d(p.n() + 2);
    for (std::size_t e = 0; e < p.edges.size(); ++e) {
        int a = node[p.ends[e].first], b = node[p.ends[e].second];
        if (a != b) d.add(a, b, std::min<std::int64_t>(p.edges[e].mult, cap));
    }
    return std::min(cap, d.run(0, 1));
}

std::set<std::vector<VertexId>> brute_local_cuts(const AuxGraph& aux, const Multigraph& g, int cluster,
                                                 std::int64_t alpha, int c) {
    const auto& members = aux.members.at(cluster);
    const VertexId t = aux.special.at(cluster);
    std::vector<VertexId> ids = members;
    ids.push_back(t);
    const int n = static_cast<int>(ids.size());
    std::map<VertexId, int> at;
    for (int i = 0; i < n; ++i) at[ids[i]] = i;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj(n);
    std::vector<char> term(n, 0);
    term[n - 1] = 1;
    for (const auto& e : g.edge_list()) {
        auto a = at.find(e.u), b = at.find(e.v);
        if (a == at.end() || b == at.end()) continue;
        adj[a->second].push_back({b->second, e.mult});
        adj[b->second].push_back({a->second, e.mult});
    }
    // terminals recomputed from g rather than taken from aux
    for (VertexId v : members)
        for (const auto& h : g.neighbors(v))
            if (!at.count(h.to)) {
                term[at[v]] = 1;
                break;
            }
    for (int i = 0; i + 1 < n; ++i)
        if (term[i]) {
            adj[i].push_back({n - 1, 1});
            adj[n - 1].push_back({i, 1});
        }
    std::vector<std::int64_t> deg(n, 0);
    std::int64_t vol = 0;
    for (int i = 0; i < n; ++i)
        for (auto [_, w] : adj[i]) deg[i] += w;
    for (auto d : deg) vol += d;
    if (vol > 40) throw TooLarge("cluster volume " + std::to_string(vol));
    const int terms = static_cast<int>(std::count(term.begin(), term.end(), 1));

    std::set<std::vector<VertexId>> out;
    std::vector<char> inU(n, 0);
    auto record = [&](const std::vector<int>& U) {
        std::int64_t v = 0, bd = 0;
        int tU = 0;
        bool real = false;
        for (int x : U) {
            v += deg[x];
            tU += term[x];
            real |= x != n - 1;
            for (auto [y, w] : adj[x])
                if (!inU[y]) bd += w;
        }
        if (!real || v > 3 * alpha || bd > c) return;
        if (tU != 0 && tU != terms) return;
        int real_count = static_cast<int>(U.size()) - (inU[n - 1] ? 1 : 0);
        if (real_count == n - 1) return;  // the real side of the cut would be empty
        std::vector<VertexId> s;
        for (int x : U) s.push_back(ids[x]);
        std::sort(s.begin(), s.end());
        out.insert(std::move(s));
    };
    // every connected set once, grown from its smallest index through exclusive neighbours
    std::vector<int> U;
    std::function<void(std::vector<int>, int)> extend = [&](std::vector<int> ext, int root) {
        record(U);
        while (!ext.empty()) {
            int w = ext.back();
            ext.pop_back();
            std::vector<int> next = ext;
            for (auto [y, _] : adj[w]) {
                if (y <= root || inU[y] || std::find(next.begin(), next.end(), y) != next.end()) continue;
                bool near = false;
                for (int u : U)
                    for (auto [z, __] : adj[u])
                        if (z == y) near = true;
                if (!near) next.push_back(y);
            }
            U.push_back(w);
            inU[w] = 1;
            extend(next, root);
            inU[w] = 0;
            U.pop_back();
        }
    };
    for (int s = 0; s < n; ++s) {
        U = {s};
        inU[s] = 1;
        std::vector<int> ext;
        for (auto [y, _] : adj[s])
            if (y > s && std::find(ext.begin(), ext.end(), y) == ext.end()) ext.push_back(y);
        extend(ext, s);
        inU[s] = 0;
    }
    return out;
}

std::string check_answer(const Multigraph& g, const QueryResult& r, int c, const OracleResult& truth) {
    std::optional<std::int64_t> expected;
    if (!truth.infinite && truth.min_cut_size <= c) expected = truth.min_cut_size;
    std::optional<std::int64_t> got;
    if (!r.empty) got = r.size;
    if (expected != got)
        return "size mismatch: expected " + (expected ? std::to_string(*expected) : "null") + ", got " +
               (got ? std::to_string(*got) : "null");
    if (!got) return {};
    std::int64_t total = 0;
    Multigraph rest = g;
    for (const auto& e : r.cutset) {
        const Half* h = g.find_edge(e.u, e.v);
        if (!h || h->mult != e.mult) return "cut edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " absent";
        total += e.mult;
        rest.remove_edge(e.u, e.v);
    }
    if (total != *got) return "cut multiplicity " + std::to_string(total) + " differs from size";
    Plain p(rest);
    int count = 0;
    component_labels(p, count);
    if (count < 2) return "cut does not disconnect";
    return {};
}

std::string StreamReport::jsonl() const {
    std::string s;
    for (const auto& c : checks) {
        nlohmann::json j;
        j["op_index"] = c.op_index;
        j["expected"] = c.expected ? nlohmann::json(*c.expected) : nlohmann::json(nullptr);
        j["got"] = c.got ? nlohmann::json(*c.got) : nlohmann::json(nullptr);
        j["ok"] = c.ok;
        if (!c.ok) {
            j["detail"] = c.detail;
            j["snapshot"] = c.snapshot;
        }
        s += j.dump() + "\n";
    }
    return s;
}

StreamReport verify_stream(const Multigraph& g0, const UpdateSeq& stream, int c, int xi, int w,
                           const HierarchyConfig& cfg, const OpHook& hook) {
    StreamReport rep;
    Multigraph cur = g0;
    InstancePool pool = fd_init(g0, c, xi, w, cfg);
    auto check = [&](std::int64_t idx) {
        CheckRecord rec;
        rec.op_index = idx;
        auto truth = brute_min_cut(cur);
        if (!truth.infinite && truth.min_cut_size <= c) rec.expected = truth.min_cut_size;
        try {
            auto r = query_min_cut(fd_current(pool));
            if (!r.empty) rec.got = r.size;
            rec.detail = check_answer(cur, r, c, truth);
        } catch (const Error& e) {
            rec.detail = e.what();
        }
        rec.ok = rec.detail.empty();
        if (!rec.ok) {
            rec.snapshot = cur.serialize();
            rep.mismatches++;
        }
        rep.checks.push_back(std::move(rec));
    };
    check(0);
    for (std::size_t k = 0; k < stream.size(); ++k) {
        cur.apply(stream[k]);
        fd_update(pool, stream[k]);
        if (hook) hook(pool, static_cast<std::int64_t>(k + 1));
        check(static_cast<std::int64_t>(k + 1));
    }
    return rep;
}

}  // namespace dmc::oracle
