#include "dmc/sparsify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dmc/local.hpp"

namespace dmc {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::pair<VertexId, VertexId> key(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

std::vector<ConnectingPath> connecting_paths(const Forest& tree, const std::vector<VertexId>& K) {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (VertexId v : tree.vertices) adj[v];
    for (const auto& e : tree.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::set<VertexId> inK;
    for (VertexId k : K)
        if (adj.count(k)) inK.insert(k);
    if (inK.size() <= 1) return {};

    // strip non-terminal leaves until none remain
    std::map<VertexId, int> deg;
    std::vector<VertexId> leaves;
    for (auto& [v, nb] : adj) {
        deg[v] = static_cast<int>(nb.size());
        if (deg[v] <= 1 && !inK.count(v)) leaves.push_back(v);
    }
    std::set<VertexId> gone;
    while (!leaves.empty()) {
        VertexId v = leaves.back();
        leaves.pop_back();
        if (gone.count(v)) continue;
        gone.insert(v);
        for (VertexId w : adj[v]) {
            if (gone.count(w)) continue;
            if (--deg[w] <= 1 && !inK.count(w)) leaves.push_back(w);
        }
    }
    auto alive = [&](VertexId v) { return !gone.count(v); };
    auto is_key = [&](VertexId v) { return inK.count(v) || deg[v] >= 3; };

    std::vector<ConnectingPath> paths;
    std::set<std::pair<VertexId, VertexId>> used;
    for (auto& [x, nb] : adj) {
        if (!alive(x) || !is_key(x)) continue;
        std::vector<VertexId> order = nb;
        std::sort(order.begin(), order.end());
        for (VertexId y : order) {
            if (!alive(y) || used.count(key(x, y))) continue;
            ConnectingPath p;
            p.walk = {x};
            VertexId prev = x, cur = y;
            used.insert(key(x, y));
            while (true) {
                p.walk.push_back(cur);
                if (is_key(cur)) break;
                VertexId next = prev;
                for (VertexId z : adj[cur])
                    if (z != prev && alive(z)) next = z;
                used.insert(key(cur, next));
                prev = cur;
                cur = next;
            }
            paths.push_back(std::move(p));
        }
    }
    return paths;
}

ContractedForest contract(const Forest& F, const std::vector<VertexId>& K) {
    ContractedForest out;
    if (K.empty()) return out;
    // split into trees
    std::map<VertexId, std::vector<VertexId>> adj;
    for (VertexId v : F.vertices) adj[v];
    for (const auto& e : F.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::set<VertexId> inK(K.begin(), K.end());
    std::set<VertexId> seen;
    for (auto& [root, _] : adj) {
        if (seen.count(root)) continue;
        Forest tree;
        std::vector<VertexId> stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            tree.vertices.push_back(x);
            for (VertexId y : adj[x]) {
                if (x < y) tree.edges.push_back({x, y, 1, {}});
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
        std::vector<VertexId> kt;
        for (VertexId v : tree.vertices)
            if (inK.count(v)) kt.push_back(v);
        if (kt.empty()) continue;
        if (kt.size() == 1) {
            out.vertices.push_back(kt[0]);
            continue;
        }
        for (auto& p : connecting_paths(tree, kt)) {
            out.vertices.push_back(p.walk.front());
            out.vertices.push_back(p.walk.back());
            out.edges.push_back({p.walk.front(), p.walk.back(), std::move(p.walk)});
        }
    }
    out.vertices = sorted_unique(std::move(out.vertices));
    return out;
}

Forest spanning_forest(const Multigraph& g, const std::vector<EdgeRec>& excluded) {
    std::unordered_set<std::int64_t> ex;
    for (const auto& e : excluded) ex.insert(e.eid.id);
    LocalGraph lg = LocalGraph::whole(g);
    Forest f;
    f.vertices = lg.ids;
    std::vector<char> seen(lg.n(), 0);
    std::vector<int> queue;
    for (int s = 0; s < lg.n(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        queue.assign(1, s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int x = queue[qi];
            for (const auto& a : lg.adj[x]) {
                if (seen[a.to] || ex.count(lg.edges[a.edge].eid.id)) continue;
                seen[a.to] = 1;
                queue.push_back(a.to);
                const auto& le = lg.edges[a.edge];
                f.edges.push_back({lg.ids[le.a], lg.ids[le.b], le.mult, le.eid});
            }
        }
    }
    return f;
}

CutContainmentSet containment_fallback(const Multigraph& g) {
    CutContainmentSet s;
    s.cc = g.edge_list();
    std::vector<std::vector<VertexId>> single;
    for (VertexId v : g.vertex_list()) single.push_back({v});
    s.refinement = Partition::from_clusters(std::move(single));
    s.strategy = "fallback";
    return s;
}

CutContainmentSet build_containment(const Multigraph& g, const std::vector<VertexId>& Tin, int c,
                                    const ContainmentOptions& opt) {
    std::vector<VertexId> T;
    for (VertexId t : sorted_unique(Tin))
        if (g.has_vertex(t)) T.push_back(t);
    CutContainmentSet out;
    if (T.size() <= 1) {
        out.refinement = Partition::from_clusters({g.vertex_list()});
        out.strategy = "trivial";
        return out;
    }
    LocalGraph lg = LocalGraph::whole(g);
    auto caps = capped_caps(lg, c + 1);
    std::vector<int> ti;
    for (VertexId t : T) ti.push_back(lg.index.at(t));

    // terminals more than c-connected to each other can never be split by a c-cut
    std::vector<std::vector<int>> classes;
    std::vector<int> rest = ti;
    while (!rest.empty()) {
        int r = rest.front();
        std::vector<int> cls{r}, left;
        for (std::size_t i = 1; i < rest.size(); ++i) {
            auto f = max_flow(lg, caps, {r}, {rest[i]}, c + 1);
            (f.value > c ? cls : left).push_back(rest[i]);
        }
        classes.push_back(std::move(cls));
        rest = std::move(left);
    }
    const int k = static_cast<int>(classes.size());
    if (k > opt.exact_max_classes) return containment_fallback(g);

    std::vector<char> in_union(lg.edges.size(), 0);
    const std::uint64_t full = (std::uint64_t{1} << (k - 1)) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        std::vector<int> src = classes[0], snk;
        for (int j = 1; j < k; ++j) {
            auto& side = (mask >> (j - 1) & 1) ? src : snk;
            side.insert(side.end(), classes[j].begin(), classes[j].end());
        }
        auto f = max_flow(lg, caps, src, snk, c + 1);
        if (f.value > c) continue;
        for (std::size_t e = 0; e < lg.edges.size(); ++e)
            if (f.source_side[lg.edges[e].a] != f.source_side[lg.edges[e].b]) in_union[e] = 1;
    }
    std::vector<int> label;
    int comps = lg.components(label, &in_union);
    std::vector<std::vector<VertexId>> parts(comps);
    for (int i = 0; i < lg.n(); ++i) parts[label[i]].push_back(lg.ids[i]);
    out.refinement = Partition::from_clusters(std::move(parts));
    for (const auto& e : lg.edges)
        if (label[e.a] != label[e.b])
            out.cc.push_back({std::min(lg.ids[e.a], lg.ids[e.b]), std::max(lg.ids[e.a], lg.ids[e.b]), e.mult, e.eid});
    std::sort(out.cc.begin(), out.cc.end(),
              [](const EdgeRec& a, const EdgeRec& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    out.strategy = "exact";
    return out;
}

std::optional<ContainmentViolation> validate_containment(const Multigraph& g, const std::vector<VertexId>& Tin,
                                                         int c, const std::vector<EdgeRec>& CC,
                                                         const std::vector<std::vector<VertexId>>* samples) {
    std::vector<VertexId> T = sorted_unique(Tin);
    if (!samples && T.size() > 16) throw TooManyTerminals(std::to_string(T.size()) + " terminals");
    if (T.size() <= 1 && !samples) return std::nullopt;
    LocalGraph lg = LocalGraph::whole(g);
    std::unordered_set<std::int64_t> in_cc;
    for (const auto& e : CC) in_cc.insert(e.eid.id);
    auto caps1 = capped_caps(lg, c + 1);
    auto caps2 = caps1;
    for (std::size_t e = 0; e < lg.edges.size(); ++e)
        if (!in_cc.count(lg.edges[e].eid.id)) caps2[e] = c + 1;

    auto check = [&](const std::vector<VertexId>& side) -> std::optional<ContainmentViolation> {
        std::set<VertexId> s(side.begin(), side.end());
        std::vector<int> src, snk;
        for (VertexId t : T) (s.count(t) ? src : snk).push_back(lg.index.at(t));
        if (src.empty() || snk.empty()) return std::nullopt;
        auto f1 = max_flow(lg, caps1, src, snk, c + 1).value;
        if (f1 > c) return std::nullopt;
        auto f2 = max_flow(lg, caps2, src, snk, c + 1).value;
        if (f1 != f2) return ContainmentViolation{std::vector<VertexId>(s.begin(), s.end()), f1, f2};
        return std::nullopt;
    };
    if (samples) {
        for (const auto& side : *samples)
            if (auto v = check(side)) return v;
        return std::nullopt;
    }
    const std::uint64_t full = (std::uint64_t{1} << (T.size() - 1)) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        std::vector<VertexId> side{T[0]};
        for (std::size_t j = 1; j < T.size(); ++j)
            if (mask >> (j - 1) & 1) side.push_back(T[j]);
        if (auto v = check(side)) return v;
    }
    return std::nullopt;
}

TerminalSparsifier build_sparsifier_cluster(const Multigraph& g, const std::vector<VertexId>& T,
                                            const std::vector<EdgeRec>& CC, const Forest& F, int c,
                                            std::int64_t gamma) {
    if (gamma <= c)
        throw ParameterViolation("gamma=" + std::to_string(gamma) + " must exceed c=" + std::to_string(c));
    std::vector<VertexId> K = T;
    for (const auto& e : CC) {
        K.push_back(e.u);
        K.push_back(e.v);
    }
    K = sorted_unique(std::move(K));
    TerminalSparsifier s;
    ContractedForest cf = contract(F, K);
    for (VertexId v : cf.vertices) {
        s.h.add_vertex(v);
        s.origin[v] = v;
    }
    for (const auto& e : CC) {
        Origin o = e.eid.origin == Origin::forest_gamma ? Origin::forest_gamma : Origin::containment_chain;
        s.h.add_edge(e.u, e.v, e.mult, EdgeId{e.eid.id, o});
    }
    for (const auto& e : cf.edges)
        s.h.add_edge(e.a, e.b, static_cast<int>(gamma), EdgeId{fresh_edge_id(), Origin::forest_gamma});
    (void)g;
    return s;
}

namespace {

std::vector<VertexId> cluster_terminals(const Multigraph& g, const std::vector<VertexId>& P,
                                        const std::unordered_map<VertexId, int>& cluster_of, int id) {
    std::vector<VertexId> t;
    for (VertexId v : P)
        for (const auto& h : g.neighbors(v))
            if (cluster_of.at(h.to) != id) {
                t.push_back(v);
                break;
            }
    return t;
}

}  // namespace

TerminalSparsifier build_sparsifier_partition(const Multigraph& g, const Partition& p,
                                              const std::vector<std::vector<EdgeRec>>& CC,
                                              const std::vector<Forest>& F, int c, std::int64_t gamma) {
    TerminalSparsifier s;
    for (std::size_t i = 0; i < p.clusters.size(); ++i) {
        Multigraph gp = induced(g, p.clusters[i]);
        auto T = cluster_terminals(g, p.clusters[i], p.cluster_of, static_cast<int>(i));
        auto part = build_sparsifier_cluster(gp, T, CC[i], F[i], c, gamma);
        for (VertexId v : part.h.vertex_list()) {
            s.h.add_vertex(v);
            s.origin[v] = v;
        }
        for (const auto& e : part.h.edge_list()) s.h.add_edge(e.u, e.v, e.mult, e.eid);
    }
    for (const auto& e : intercluster_edges(g, p)) s.h.add_edge(e.u, e.v, e.mult, e.eid);
    return s;
}

std::string dump_sparsifier(const TerminalSparsifier& s) {
    std::ostringstream os;
    for (VertexId v : s.h.vertex_list()) os << "v " << v << ' ' << s.origin.at(v) << '\n';
    for (const auto& e : s.h.edge_list())
        os << "e " << e.eid.id << ' ' << e.u << ' ' << e.v << ' ' << e.mult << ' ' << origin_name(e.eid.origin)
           << '\n';
    return os.str();
}

Partition OneLevelECDS::partition() const {
    std::vector<std::vector<VertexId>> cl;
    for (const auto& [_, st] : clusters) cl.push_back(st.vertices);
    return Partition::from_clusters(std::move(cl));
}

bool OneLevelECDS::is_terminal(VertexId v) const {
    int id = cluster_of.at(v);
    for (const auto& h : g.neighbors(v))
        if (cluster_of.at(h.to) != id) return true;
    return false;
}

std::vector<VertexId> OneLevelECDS::terminals() const {
    std::vector<VertexId> t;
    for (const auto& [_, st] : clusters) t.insert(t.end(), st.terminals.begin(), st.terminals.end());
    std::sort(t.begin(), t.end());
    return t;
}

TerminalSparsifier OneLevelECDS::sparsifier() const {
    TerminalSparsifier s;
    s.h = h;
    for (VertexId v : h.vertex_list()) s.origin[v] = v;
    return s;
}

namespace {

void compute_state(OneLevelECDS& ds, int id) {
    ClusterState& st = ds.clusters.at(id);
    st.terminals = cluster_terminals(ds.g, st.vertices, ds.cluster_of, id);
    Multigraph gp = induced(ds.g, st.vertices);
    auto cc = build_containment(gp, st.terminals, ds.params.grade, ds.params.containment);
    st.cc = std::move(cc.cc);
    st.strategy = std::move(cc.strategy);
    st.forest = spanning_forest(gp, st.cc);
    auto sp = build_sparsifier_cluster(gp, st.terminals, st.cc, st.forest, ds.params.grade, ds.params.gamma);
    st.h_vertices = sp.h.vertex_list();
    st.h_edges = sp.h.edge_list();
}

int add_cluster(OneLevelECDS& ds, std::vector<VertexId> vs, ClusterCert cert) {
    int id = ds.next_cluster++;
    std::sort(vs.begin(), vs.end());
    for (VertexId v : vs) ds.cluster_of[v] = id;
    ClusterState st;
    st.vertices = std::move(vs);
    st.cert = cert;
    ds.clusters.emplace(id, std::move(st));
    return id;
}

}  // namespace

Multigraph recompute_sparsifier(const OneLevelECDS& ds) {
    Partition p;
    std::vector<std::vector<EdgeRec>> cc;
    std::vector<Forest> forests;
    for (const auto& [_, st] : ds.clusters) {
        p.clusters.push_back(st.vertices);
        cc.push_back(st.cc);
        forests.push_back(st.forest);
    }
    for (std::size_t i = 0; i < p.clusters.size(); ++i)
        for (VertexId v : p.clusters[i]) p.cluster_of[v] = static_cast<int>(i);
    return build_sparsifier_partition(ds.g, p, cc, forests, ds.params.grade, ds.params.gamma).h;
}

OneLevelECDS ec_init(const Multigraph& g, int grade, double phi, std::int64_t gamma, const ECParams& base) {
    if (gamma <= grade) throw ParameterViolation("gamma must exceed the grade");
    OneLevelECDS ds;
    ds.g = g;
    ds.params = base;
    ds.params.grade = grade;
    ds.params.phi = phi;
    ds.params.gamma = gamma;
    if (base.single_volume_cap > 0 && 2 * g.m() <= base.single_volume_cap && g.n() > 0) {
        add_cluster(ds, g.vertex_list(), ClusterCert{Ratio{0, 1}, CertMethod::small_volume, g.n() == 1});
    } else {
        auto d = expander_decompose(g, phi, base.eps, base.expander);
        for (std::size_t i = 0; i < d.partition.clusters.size(); ++i)
            add_cluster(ds, d.partition.clusters[i], d.certificate.clusters[i]);
    }
    for (auto& [id, _] : ds.clusters) compute_state(ds, id);
    for (const auto& [_, st] : ds.clusters) {
        for (VertexId v : st.h_vertices) ds.h.add_vertex(v);
        for (const auto& e : st.h_edges) ds.h.add_edge(e.u, e.v, e.mult, e.eid);
    }
    for (const auto& e : intercluster_edges(g, ds.partition())) ds.h.add_edge(e.u, e.v, e.mult, e.eid);
    return ds;
}

ECUpdateResult ec_update(OneLevelECDS& ds, const UpdateSeq& seq, int out_grade, double out_phi) {
    ECUpdateResult res;
    if (seq.empty()) return res;
    if (ds.params.grade < out_grade * (out_grade + 2))
        throw ParameterViolation("update needs grade " + std::to_string(out_grade * (out_grade + 2)) + ", have " +
                                 std::to_string(ds.params.grade));

    // touched clusters and the old picture around them
    std::set<VertexId> op_vertices;
    for (const auto& op : seq) {
        op_vertices.insert(op.u);
        if (op.kind == UpdateOp::insert_edge || op.kind == UpdateOp::delete_edge) op_vertices.insert(op.v);
    }
    std::set<int> dirty;
    for (VertexId v : op_vertices)
        if (auto it = ds.cluster_of.find(v); it != ds.cluster_of.end()) dirty.insert(it->second);
    std::set<VertexId> region(op_vertices.begin(), op_vertices.end());
    for (int id : dirty) region.insert(ds.clusters.at(id).vertices.begin(), ds.clusters.at(id).vertices.end());
    std::map<VertexId, bool> old_term;
    for (VertexId v : region) old_term[v] = ds.g.has_vertex(v) && ds.is_terminal(v);

    std::map<int, std::vector<std::pair<VertexId, VertexId>>> deleted;
    std::set<int> reshaped;  // induced subgraph changed
    std::set<int> grown;     // received an intra-cluster insertion
    std::map<int, Multigraph> before;
    for (const auto& op : seq) {
        if (op.kind != UpdateOp::insert_edge && op.kind != UpdateOp::delete_edge) continue;
        auto a = ds.cluster_of.find(op.u), b = ds.cluster_of.find(op.v);
        if (a == ds.cluster_of.end() || b == ds.cluster_of.end() || a->second != b->second) continue;
        reshaped.insert(a->second);
        if (op.kind == UpdateOp::delete_edge)
            deleted[a->second].push_back({op.u, op.v});
        else
            grown.insert(a->second);
    }
    for (auto& [id, D] : deleted) {
        // pruning needs a pure deletion batch against the old cluster graph
        if (grown.count(id)) continue;
        bool present = true;
        for (auto [u, v] : D) present = present && ds.g.find_edge(u, v);
        if (!present) continue;
        const auto& P = ds.clusters.at(id).vertices;
        std::int64_t mP = 0, k = 0;
        for (VertexId v : P)
            for (const auto& h : ds.g.neighbors(v))
                if (ds.cluster_of.at(h.to) == id) mP += h.mult;
        mP /= 2;
        for (auto [u, v] : D)
            if (auto* h = ds.g.find_edge(u, v)) k += h->mult;
        const auto& cert = ds.clusters.at(id).cert;
        if (cert.method != CertMethod::small_volume && static_cast<double>(k) <= cert.phi_witness.value() * mP / 10.0)
            before.emplace(id, induced(ds.g, P));
    }

    // apply to the graph, tracking membership
    for (const auto& op : seq) {
        ds.g.apply(op);
        if (op.kind == UpdateOp::insert_vertex) {
            int id = add_cluster(ds, {op.u}, ClusterCert{Ratio{1, 1}, CertMethod::exhaustive, true});
            dirty.insert(id);
        } else if (op.kind == UpdateOp::delete_vertex) {
            int id = ds.cluster_of.at(op.u);
            auto& vs = ds.clusters.at(id).vertices;
            vs.erase(std::find(vs.begin(), vs.end(), op.u));
            ds.cluster_of.erase(op.u);
            reshaped.insert(id);
        }
    }

    std::int64_t redone_vol = 0;
    std::vector<int> affected;
    for (int id : dirty) {
        auto& st = ds.clusters.at(id);
        if (st.vertices.empty()) {
            ds.clusters.erase(id);
            res.removed_clusters.push_back(id);
            continue;
        }
        if (!reshaped.count(id)) {
            affected.push_back(id);
            continue;
        }
        std::vector<std::vector<VertexId>> seeds;
        if (st.cert.method == CertMethod::small_volume && ds.params.single_volume_cap > 0 &&
            volume(ds.g, st.vertices) <= ds.params.single_volume_cap) {
            auto vs = st.vertices;
            auto cert = st.cert;
            ds.clusters.erase(id);
            res.removed_clusters.push_back(id);
            int nid = add_cluster(ds, std::move(vs), cert);
            affected.push_back(nid);
            res.new_clusters.push_back(nid);
            continue;
        }
        if (auto it = before.find(id); it != before.end()) {
            double phi_c = st.cert.phi_witness.value();
            try {
                auto pr = expander_prune(it->second, std::min(phi_c, 0.999), deleted[id], ds.params.expander);
                if (!pr.fallback && !pr.pruned.empty()) {
                    std::set<VertexId> pset(pr.pruned.begin(), pr.pruned.end());
                    std::vector<VertexId> keep, cut;
                    // pruned ids come from the old graph; the batch may have deleted some
                    for (VertexId v : st.vertices) (pset.count(v) ? cut : keep).push_back(v);
                    seeds.push_back(std::move(keep));
                    seeds.push_back(std::move(cut));
                }
            } catch (const TooManyDeletions&) {
            }
        }
        if (seeds.empty()) seeds.push_back(st.vertices);
        for (VertexId v : st.vertices) redone_vol += ds.g.degree(v);
        ds.clusters.erase(id);
        res.removed_clusters.push_back(id);
        for (auto& seed : seeds) {
            if (seed.empty()) continue;
            for (auto& [vs, cert] : decompose_vertices(ds.g, seed, out_phi, ds.params.expander)) {
                int nid = add_cluster(ds, vs, cert);
                affected.push_back(nid);
                res.new_clusters.push_back(nid);
            }
        }
    }
    if (ds.g.n() > 64 && redone_vol > ds.g.m()) throw RebuildRequired("local repair touches half the volume");

    ds.params.grade = out_grade;
    ds.params.phi = out_phi;
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    for (int id : affected) compute_state(ds, id);

    // diff the sparsifier around the region
    std::map<std::pair<VertexId, VertexId>, EdgeRec> old_e, new_e;
    std::set<VertexId> old_v, new_v;
    for (VertexId v : region) {
        if (!ds.h.has_vertex(v)) continue;
        old_v.insert(v);
        for (const auto& h : ds.h.neighbors(v)) old_e[key(v, h.to)] = {std::min(v, h.to), std::max(v, h.to), h.mult, h.eid};
    }
    for (int id : affected) {
        const auto& st = ds.clusters.at(id);
        new_v.insert(st.h_vertices.begin(), st.h_vertices.end());
        for (const auto& e : st.h_edges) new_e[key(e.u, e.v)] = e;
    }
    for (VertexId v : region) {
        if (!ds.g.has_vertex(v)) continue;
        int id = ds.cluster_of.at(v);
        for (const auto& h : ds.g.neighbors(v))
            if (ds.cluster_of.at(h.to) != id) new_e[key(v, h.to)] = {std::min(v, h.to), std::max(v, h.to), h.mult, h.eid};
    }
    UpdateSeq dels, dvs, ivs, ins;
    for (const auto& [k, e] : old_e) {
        auto it = new_e.find(k);
        if (it != new_e.end() && it->second.mult == e.mult) {
            bool both_gamma = e.eid.origin == Origin::forest_gamma && it->second.eid.origin == Origin::forest_gamma;
            if (both_gamma || (it->second.eid.id == e.eid.id && it->second.eid.origin == e.eid.origin)) {
                if (both_gamma && it->second.eid.id != e.eid.id) {
                    // keep the existing id so the level above sees no churn
                    auto& st = ds.clusters.at(ds.cluster_of.at(e.u));
                    for (auto& he : st.h_edges)
                        if (he.u == e.u && he.v == e.v) he.eid = e.eid;
                }
                new_e.erase(it);
                continue;
            }
        }
        dels.push_back(UpdateOp::de(e.u, e.v));
    }
    for (VertexId v : old_v)
        if (!new_v.count(v)) dvs.push_back(UpdateOp::dv(v));
    for (VertexId v : new_v)
        if (!old_v.count(v)) ivs.push_back(UpdateOp::iv(v));
    for (const auto& [k, e] : new_e) ins.push_back(UpdateOp::ie(e.u, e.v, e.mult, e.eid));
    for (auto* part : {&dels, &dvs, &ivs, &ins}) res.h_seq.insert(res.h_seq.end(), part->begin(), part->end());
    ds.h.apply(res.h_seq);

    for (VertexId v : region) {
        bool now = ds.g.has_vertex(v) && ds.is_terminal(v);
        if (now != old_term[v]) res.S.push_back(v);
    }
    res.region.assign(region.begin(), region.end());
    return res;
}

}  // namespace dmc
