#include "dmc/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <unordered_set>

namespace dmc {

ParameterSchedule schedule_params(int c, std::int64_t n, const HierarchyConfig& cfg) {
    if (c < 1) throw PreconditionViolated("c must be at least 1");
    n = std::max<std::int64_t>(n, 2);
    ParameterSchedule s;
    if (cfg.zeta > 0) {
        s.zeta = cfg.zeta;
    } else {
        // log(log log n / 100 / log 4c) is negative far beyond any feasible n
        double inner = std::log(std::max(std::log(static_cast<double>(n)), std::exp(1.0)));
        double z = std::floor(std::log(inner / 100.0 / std::log(4.0 * c)));
        s.zeta = std::clamp(static_cast<int>(std::isfinite(z) ? z : 1), 1, std::max(1, cfg.zeta_cap));
    }
    s.c.assign(s.zeta + 1, c);
    for (int i = s.zeta - 1; i >= 0; --i) s.c[i] = s.c[i + 1] * (s.c[i + 1] + 2);
    double lg = std::log2(static_cast<double>(n));
    s.phi.assign(s.zeta + 1, 0.0);
    s.phi[0] = std::min(0.5, std::max(cfg.phi_floor, std::pow(2.0, -std::pow(lg, 0.75))));
    for (int i = 1; i <= s.zeta; ++i) s.phi[i] = s.phi[i - 1] / cfg.k_phi;
    s.gamma = s.c[0] + 1;
    s.alpha = static_cast<std::int64_t>(std::ceil(static_cast<double>(s.c[0]) / s.phi[s.zeta]));
    return s;
}

namespace {

std::map<int, std::vector<VertexId>> cluster_members(const OneLevelECDS& ec) {
    std::map<int, std::vector<VertexId>> out;
    for (const auto& [id, st] : ec.clusters) out.emplace(id, st.vertices);
    return out;
}

}  // namespace

OneLevelMinCutDS mc_one_init(const Multigraph& g, int c, double phi, int grade, std::int64_t gamma,
                             std::int64_t alpha, const ECParams& base, bool parallel) {
    if (grade < c) throw ParameterViolation("grade below c");
    if (static_cast<double>(alpha) < std::ceil(grade / phi - 1e-9)) throw ParameterViolation("alpha below grade/phi");
    OneLevelMinCutDS ds;
    ds.c = c;
    ds.alpha = alpha;
    ds.parallel = parallel;
    ds.ec = ec_init(g, grade, phi, gamma, base);
    ds.aux = build_aux(ds.ec.g, cluster_members(ds.ec));
    for (auto& e : sweep_all(ds.aux, ds.ec.g, alpha, c, parallel)) ds.lambda.insert(std::move(e));
    return ds;
}

UpdateSeq mc_one_update(OneLevelMinCutDS& ds, const UpdateSeq& seq, int out_grade, double out_phi) {
    if (seq.empty()) return {};
    std::set<VertexId> roots;
    for (const auto& op : seq) {
        roots.insert(op.u);
        if (op.kind == UpdateOp::insert_edge || op.kind == UpdateOp::delete_edge) roots.insert(op.v);
    }
    auto res = ec_update(ds.ec, seq, out_grade, out_phi);
    roots.insert(res.S.begin(), res.S.end());

    std::set<int> touched_new, touched_old(res.removed_clusters.begin(), res.removed_clusters.end());
    for (VertexId v : res.region)
        if (ds.ec.g.has_vertex(v)) touched_new.insert(ds.ec.cluster_of.at(v));
    for (int id : touched_new)
        if (ds.aux.members.count(id)) touched_old.insert(id);

    for (VertexId v : roots) ds.lambda.remove_vertex(v);
    for (int id : touched_old)
        if (auto it = ds.aux.special.find(id); it != ds.aux.special.end()) ds.lambda.remove_vertex(it->second);

    std::map<int, std::vector<VertexId>> members;
    for (int id : touched_new) members.emplace(id, ds.ec.clusters.at(id).vertices);
    std::set<int> touched = touched_old;
    touched.insert(touched_new.begin(), touched_new.end());
    update_aux(ds.aux, ds.ec.g, members, touched);

    for (int id : touched_new) {
        ClusterView view = make_view(ds.aux, ds.ec.g, id, ds.c);
        std::vector<int> starts{view.special};
        for (VertexId v : roots)
            if (auto it = view.lg.index.find(v); it != view.lg.index.end()) starts.push_back(it->second);
        for (auto& e : enumerate_from_roots(view, starts, ds.alpha, ds.c)) ds.lambda.insert(std::move(e));
    }
    return res.h_seq;
}

LocalCutQueue rebuild_lambda(const OneLevelMinCutDS& ds) {
    AuxGraph aux = build_aux(ds.ec.g, cluster_members(ds.ec));
    LocalCutQueue q;
    for (auto& e : sweep_all(aux, ds.ec.g, ds.alpha, ds.c, false)) q.insert(std::move(e));
    return q;
}

namespace {

OneLevelMinCutDS make_level(const MultiLevelMinCutDS& mds, const Multigraph& g, int stage, bool close) {
    ECParams base;
    base.eps = mds.cfg.eps;
    base.expander = mds.cfg.expander;
    base.containment = mds.cfg.containment;
    std::int64_t alpha = mds.sched.alpha;
    if (close) {
        // one uncertified cluster: alpha must cover half of any volume the cluster may reach
        alpha = std::max(alpha, 2 * g.m());
        base.single_volume_cap = 6 * alpha;
    }
    return mc_one_init(g, mds.c, mds.sched.phi[stage], static_cast<int>(mds.sched.c[stage]), mds.sched.gamma,
                       alpha, base, mds.cfg.parallel);
}

// Appends levels built from g until one holds a single cluster.
void build_from(MultiLevelMinCutDS& mds, Multigraph g, int stage) {
    while (true) {
        if (static_cast<int>(mds.levels.size()) >= mds.cfg.max_levels)
            throw LevelCapExceeded(std::to_string(mds.levels.size()) + " levels");
        OneLevelMinCutDS lvl = make_level(mds, g, stage, false);
        if (lvl.ec.clusters.size() <= 1) {
            mds.levels.push_back(std::move(lvl));
            return;
        }
        Multigraph next = lvl.ec.h;
        if (next.n() >= g.n()) {
            // no shrinkage: close the level as one cluster whose every cut counts as local
            mds.levels.push_back(make_level(mds, g, stage, true));
            return;
        }
        mds.levels.push_back(std::move(lvl));
        g = std::move(next);
    }
}

}  // namespace

MultiLevelMinCutDS mc_multi_init(const Multigraph& g, int c, const ParameterSchedule& sched,
                                 const HierarchyConfig& cfg) {
    MultiLevelMinCutDS mds;
    mds.sched = sched;
    mds.cfg = cfg;
    mds.c = c;
    build_from(mds, g, 0);
    return mds;
}

MultiLevelMinCutDS mc_multi_init(const Multigraph& g, int c, const HierarchyConfig& cfg) {
    return mc_multi_init(g, c, schedule_params(c, g.n(), cfg), cfg);
}

void mc_multi_update(MultiLevelMinCutDS& mds, const UpdateSeq& seq) {
    if (seq.empty()) return;
    if (mds.batches >= mds.sched.zeta)
        throw ScheduleExhausted("batch " + std::to_string(mds.batches + 1) + " exceeds zeta=" +
                                std::to_string(mds.sched.zeta));
    const int stage = mds.batches + 1;
    const int grade = static_cast<int>(mds.sched.c[stage]);
    const double phi = mds.sched.phi[stage];
    UpdateSeq cur = seq;
    for (std::size_t i = 0; i < mds.levels.size() && !cur.empty(); ++i) {
        auto& L = mds.levels[i];
        const double ni = static_cast<double>(L.ec.g.n());
        bool rebuild = static_cast<double>(cur.size()) > ni / std::log(std::max(ni, 3.0));
        if (rebuild) {
            Multigraph gi = L.ec.g;
            gi.apply(cur);
            mds.levels.resize(i);
            build_from(mds, std::move(gi), stage);
            break;
        }
        try {
            cur = mc_one_update(L, cur, grade, phi);
        } catch (const RebuildRequired&) {
            // the graph of this level is already current
            Multigraph gi = L.ec.g;
            mds.levels.resize(i);
            build_from(mds, std::move(gi), stage);
            break;
        }
        if (L.ec.clusters.size() <= 1) {
            mds.levels.resize(i + 1);
            break;
        }
        if (i + 1 == mds.levels.size()) {
            Multigraph gi = L.ec.g;
            Multigraph next = L.ec.h;
            if (next.n() >= gi.n()) {
                mds.levels.resize(i);
                build_from(mds, std::move(gi), stage);
            } else {
                build_from(mds, std::move(next), stage);
            }
            break;
        }
    }
    mds.batches++;
}

namespace {

// Component labels of g without the listed edge ids.
std::map<VertexId, int> components_without(const Multigraph& g, const std::unordered_set<std::int64_t>& cut,
                                           int& count) {
    std::map<VertexId, int> label;
    count = 0;
    for (VertexId s : g.vertex_list()) {
        if (label.count(s)) continue;
        std::vector<VertexId> stack{s};
        label[s] = count;
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            for (const auto& h : g.neighbors(x)) {
                if (cut.count(h.eid.id) || label.count(h.to)) continue;
                label[h.to] = count;
                stack.push_back(h.to);
            }
        }
        ++count;
    }
    return label;
}

std::vector<VertexId> smallest_component(const std::map<VertexId, int>& label, int count) {
    std::vector<std::vector<VertexId>> parts(count);
    for (const auto& [v, l] : label) parts[l].push_back(v);
    auto best = std::min_element(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
    return *best;
}

}  // namespace

QueryResult query_min_cut(const MultiLevelMinCutDS& mds) {
    QueryResult r;
    if (mds.levels.empty()) return r;
    const Multigraph& g0 = mds.levels.front().ec.g;
    int count = 0;
    auto label = components_without(g0, {}, count);
    if (count > 1) {
        r.empty = false;
        r.size = 0;
        r.side_hint = smallest_component(label, count);
        return r;
    }
    const LocalCutEntry* best = nullptr;
    for (int i = static_cast<int>(mds.levels.size()) - 1; i >= 0; --i) {
        const LocalCutEntry* m = mds.levels[i].lambda.min();
        // on ties the cut already found higher up wins
        if (m && (!best || m->cut_size < best->cut_size)) {
            best = m;
            r.level = i;
        }
    }
    if (!best) return r;
    std::unordered_set<std::int64_t> ids;
    std::int64_t total = 0;
    for (const auto& e : best->cutset) {
        if (e.eid.origin == Origin::forest_gamma || e.eid.id < 0)
            throw InternalInconsistency("forest edge in a level-" + std::to_string(r.level) + " cut");
        auto base = g0.edge_by_id(e.eid.id);
        if (!base || base->mult != e.mult)
            throw InternalInconsistency("edge " + std::to_string(e.eid.id) + " does not lift");
        r.cutset.push_back(*base);
        ids.insert(e.eid.id);
        total += base->mult;
    }
    if (total != best->cut_size) throw InternalInconsistency("lifted cut size differs");
    std::sort(r.cutset.begin(), r.cutset.end(),
              [](const EdgeRec& a, const EdgeRec& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    int parts = 0;
    auto cut_label = components_without(g0, ids, parts);
    if (parts < 2) throw InternalInconsistency("lifted cut does not disconnect");
    r.empty = false;
    r.size = total;
    r.side_hint = smallest_component(cut_label, parts);
    return r;
}

std::string query_json(const QueryResult& r) {
    nlohmann::json j;
    if (r.empty) {
        j["size"] = nullptr;
        return j.dump();
    }
    j["size"] = r.size;
    j["cutset"] = nlohmann::json::array();
    for (const auto& e : r.cutset) j["cutset"].push_back({e.u, e.v, e.mult});
    j["side_hint"] = r.side_hint;
    return j.dump();
}

InstancePool fd_init(const Multigraph& g, int c, int xi, int w, const HierarchyConfig& cfg) {
    if (xi < 1) throw ConfigError("xi must be at least 1");
    double need = 2.0 * std::pow(6.0, xi);
    if (static_cast<double>(w) < need)
        throw ConfigError("w=" + std::to_string(w) + " below 2*6^xi=" + std::to_string(static_cast<long>(need)));
    InstancePool pool;
    pool.graph = g;
    pool.c = c;
    pool.xi = xi;
    pool.w = w;
    pool.cfg = cfg;
    if (schedule_params(c, g.n(), cfg).zeta < xi) pool.cfg.zeta = xi;
    pool.branching = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(w), 1.0 / xi) - 1e-9));
    pool.chain.assign(1, mc_multi_init(g, c, pool.cfg));
    pool.covered.assign(xi, 0);
    for (int j = 1; j < xi; ++j) pool.chain.push_back(pool.chain.front());
    pool.current = pool.chain.front();
    return pool;
}

void fd_update(InstancePool& pool, const UpdateOp& op) {
    pool.graph.apply(op);
    pool.pending.push_back(op);
    const std::size_t p = pool.pending.size();
    if (p >= static_cast<std::size_t>(pool.w)) {
        pool.chain.assign(1, mc_multi_init(pool.graph, pool.c, pool.cfg));
        for (int j = 1; j < pool.xi; ++j) pool.chain.push_back(pool.chain.front());
        pool.covered.assign(pool.xi, 0);
        pool.pending.clear();
        pool.current = pool.chain.front();
        pool.rebuilds++;
        return;
    }
    auto batch = [&](std::size_t from, std::size_t to) { return UpdateSeq(pool.pending.begin() + from, pool.pending.begin() + to); };
    for (int j = 1; j < pool.xi; ++j) {
        std::size_t span = 1;
        for (int k = 0; k < pool.xi - j; ++k) span *= static_cast<std::size_t>(pool.branching);
        std::size_t target = p / span * span;
        if (pool.covered[j] == target) continue;
        pool.chain[j] = pool.chain[j - 1];
        mc_multi_update(pool.chain[j], batch(pool.covered[j - 1], target));
        pool.covered[j] = target;
    }
    const int top = pool.xi - 1;
    pool.current = pool.chain[top];
    if (pool.covered[top] < p) mc_multi_update(pool.current, batch(pool.covered[top], p));
}

const MultiLevelMinCutDS& fd_current(const InstancePool& pool) { return pool.current; }

}  // namespace dmc
