#include "dmc/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmc {

namespace {

struct Best {
    Ratio r{1, 0};  // +inf sentinel
    std::uint64_t mask = 0;
    bool any = false;
    void offer(std::int64_t cut, std::int64_t small, std::uint64_t m) {
        Ratio cand{cut, small};
        if (!any || cand < r) {
            r = cand;
            mask = m;
            any = true;
        }
    }
};

// Gray-code walk over subsets of the first `low` vertices with the bits in `fixed` forced on.
Best gray_chunk(const LocalGraph& g, int low, std::uint64_t fixed) {
    const int n = g.n();
    std::vector<char> in(n, 0);
    std::int64_t vol = 0, cut = 0;
    for (int i = 0; i < n; ++i)
        if (fixed >> i & 1) in[i] = 1;
    for (int i = 0; i < n; ++i)
        if (in[i]) {
            vol += g.deg[i];
            for (const auto& a : g.adj[i])
                if (!in[a.to]) cut += a.mult;
        }
    Best best;
    std::uint64_t mask = fixed;
    if (fixed != 0) best.offer(cut, std::min(vol, g.vol - vol), mask);
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t i = 1; i < steps; ++i) {
        int x = std::countr_zero(i);
        in[x] ^= 1;
        mask ^= std::uint64_t{1} << x;
        vol += in[x] ? g.deg[x] : -g.deg[x];
        for (const auto& a : g.adj[x]) cut += (in[a.to] == in[x]) ? -a.mult : a.mult;
        if (mask != 0) best.offer(cut, std::min(vol, g.vol - vol), mask);
    }
    return best;
}

std::vector<int> mask_side(const LocalGraph& g, std::uint64_t mask) {
    std::vector<int> in, out;
    std::int64_t vin = 0;
    for (int i = 0; i < g.n(); ++i) {
        if (mask >> i & 1) {
            in.push_back(i);
            vin += g.deg[i];
        } else {
            out.push_back(i);
        }
    }
    return vin * 2 <= g.vol ? in : out;
}

bool trivial_cases(const LocalGraph& g, Conductance& c) {
    if (g.n() <= 1) {
        c.undefined = true;
        c.exact = true;
        return true;
    }
    std::vector<int> label;
    int k = g.components(label);
    if (k > 1) {
        // smallest-volume component is a zero-ratio witness
        std::vector<std::int64_t> cv(k, 0);
        for (int i = 0; i < g.n(); ++i) cv[label[i]] += g.deg[i];
        int pick = static_cast<int>(std::min_element(cv.begin(), cv.end()) - cv.begin());
        std::vector<int> side;
        for (int i = 0; i < g.n(); ++i)
            if (label[i] == pick) side.push_back(i);
        c.exact = true;
        c.lower = c.upper = Ratio{0, 1};
        c.witness = g.to_ids(side);
        return true;
    }
    return false;
}

Conductance from_best(const LocalGraph& g, const Best& b) {
    Conductance c;
    c.exact = true;
    c.lower = c.upper = b.r;
    c.witness = g.to_ids(mask_side(g, b.mask));
    return c;
}

std::int64_t edge_connectivity(const LocalGraph& g, std::int64_t stop_below) {
    // min over v of maxflow(0, v); stops early once the value drops below stop_below
    std::int64_t lam = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < g.n(); ++i) lam = std::min(lam, g.deg[i]);
    auto caps = capped_caps(g, std::numeric_limits<int>::max());
    for (int v = 1; v < g.n() && lam >= stop_below; ++v) {
        auto f = max_flow(g, caps, {0}, {v}, lam);
        lam = std::min(lam, f.value);
    }
    return lam;
}

struct Sweep {
    std::vector<int> side;  // local indices
    Ratio ratio;
};

Sweep spectral_sweep(const LocalGraph& g, double phi, const ExpanderOptions& opt) {
    const int n = g.n();
    std::vector<double> sq(n), x(n), y(n);
    double norm_sq = 0;
    for (int i = 0; i < n; ++i) {
        sq[i] = std::sqrt(static_cast<double>(g.deg[i]));
        norm_sq += sq[i] * sq[i];
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < n; ++i) x[i] = U(rng);
    auto orth_normalise = [&](std::vector<double>& v) {
        double dot = 0;
        for (int i = 0; i < n; ++i) dot += v[i] * sq[i];
        double s = dot / norm_sq, nn = 0;
        for (int i = 0; i < n; ++i) {
            v[i] -= s * sq[i];
            nn += v[i] * v[i];
        }
        nn = std::sqrt(nn);
        if (nn > 0)
            for (auto& e : v) e /= nn;
    };
    orth_normalise(x);
    for (int it = 0; it < opt.power_iterations; ++it) {
        for (int i = 0; i < n; ++i) {
            double acc = 0;
            for (const auto& a : g.adj[i]) acc += a.mult * x[a.to] / sq[a.to];
            y[i] = 0.5 * (x[i] + acc / sq[i]);
        }
        orth_normalise(y);
        std::swap(x, y);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> score(n);
    for (int i = 0; i < n; ++i) score[i] = x[i] / sq[i];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (score[a] != score[b]) return score[a] < score[b];
        return g.ids[a] < g.ids[b];
    });
    std::vector<char> in(n, 0);
    std::int64_t vol = 0, cut = 0;
    Ratio best{1, 0}, best_bal{1, 0};
    int best_k = -1, best_bal_k = -1;
    for (int k = 0; k + 1 < n; ++k) {
        int v = order[k];
        in[v] = 1;
        vol += g.deg[v];
        for (const auto& a : g.adj[v]) cut += in[a.to] ? -a.mult : a.mult;
        std::int64_t small = std::min(vol, g.vol - vol);
        Ratio r{cut, small};
        if (best_k < 0 || r < best) best = r, best_k = k;
        if (small * 4 >= g.vol && (best_bal_k < 0 || r < best_bal)) best_bal = r, best_bal_k = k;
    }
    int k = best_k;
    Ratio r = best;
    if (best.at_least(phi) && best_bal_k >= 0) k = best_bal_k, r = best_bal;
    Sweep s;
    s.ratio = r;
    s.side.assign(order.begin(), order.begin() + k + 1);
    return s;
}

}  // namespace

Conductance exhaustive_conductance_serial(const LocalGraph& g) {
    Conductance c;
    if (trivial_cases(g, c)) return c;
    if (g.n() > 62) throw TooLarge("exhaustive conductance on " + std::to_string(g.n()) + " vertices");
    return from_best(g, gray_chunk(g, g.n() - 1, 0));
}

Conductance exhaustive_conductance_parallel(const LocalGraph& g) {
    Conductance c;
    if (trivial_cases(g, c)) return c;
    if (g.n() > 62) throw TooLarge("exhaustive conductance on " + std::to_string(g.n()) + " vertices");
    const int free_bits = g.n() - 1;
    const int top = std::min(free_bits, 6);
    const int low = free_bits - top;
    const int chunks = 1 << top;
    std::vector<Best> part(chunks);
#pragma omp parallel for schedule(dynamic)
    for (int ch = 0; ch < chunks; ++ch) part[ch] = gray_chunk(g, low, static_cast<std::uint64_t>(ch) << low);
    Best best;
    for (const auto& b : part)
        if (b.any && (!best.any || b.r < best.r)) best = b;
    return from_best(g, best);
}

Conductance conductance_local(const LocalGraph& g, const ExpanderOptions& opt) {
    Conductance c;
    if (trivial_cases(g, c)) return c;
    if (g.n() <= opt.exhaustive_max_n)
        return opt.parallel ? exhaustive_conductance_parallel(g) : exhaustive_conductance_serial(g);
    std::int64_t lam = edge_connectivity(g, 0);
    c.lower = Ratio{2 * lam, g.vol};
    Sweep s = spectral_sweep(g, 1.0, opt);
    c.upper = s.ratio;
    c.witness = g.to_ids(s.side);
    return c;
}

Conductance conductance(const Multigraph& g, const ExpanderOptions& opt) {
    return conductance_local(LocalGraph::whole(g), opt);
}

std::optional<ClusterCert> certify(const LocalGraph& g, double phi, const ExpanderOptions& opt) {
    if (g.n() <= 1) return ClusterCert{Ratio{1, 1}, CertMethod::exhaustive, true};
    std::vector<int> label;
    if (g.components(label) > 1) return std::nullopt;
    std::int64_t mindeg = *std::min_element(g.deg.begin(), g.deg.end());
    // flow bound 2*lambda/vol is cheap; try it first
    if (static_cast<double>(2 * mindeg) >= phi * static_cast<double>(g.vol)) {
        auto need = static_cast<std::int64_t>(std::ceil(phi * static_cast<double>(g.vol) / 2.0 - 1e-9));
        std::int64_t lam = edge_connectivity(g, need);
        Ratio r{2 * lam, g.vol};
        if (r.at_least(phi)) return ClusterCert{r, CertMethod::flow_embedding, false};
    }
    if (g.n() <= opt.exhaustive_max_n) {
        auto c = opt.parallel ? exhaustive_conductance_parallel(g) : exhaustive_conductance_serial(g);
        if (c.lower.at_least(phi)) return ClusterCert{c.lower, CertMethod::exhaustive, false};
    }
    return std::nullopt;
}

std::vector<std::pair<std::vector<VertexId>, ClusterCert>> decompose_vertices(const Multigraph& g,
                                                                             const std::vector<VertexId>& S,
                                                                             double phi,
                                                                             const ExpanderOptions& opt) {
    std::vector<std::pair<std::vector<VertexId>, ClusterCert>> out;
    std::vector<std::vector<VertexId>> work{S};
    while (!work.empty()) {
        auto cur = std::move(work.back());
        work.pop_back();
        std::sort(cur.begin(), cur.end());
        LocalGraph lg = LocalGraph::induced(g, cur);
        std::vector<int> label;
        int k = lg.components(label);
        if (k > 1) {
            std::vector<std::vector<VertexId>> parts(k);
            for (int i = 0; i < lg.n(); ++i) parts[label[i]].push_back(lg.ids[i]);
            for (auto& p : parts) work.push_back(std::move(p));
            continue;
        }
        if (auto cert = certify(lg, phi, opt)) {
            out.emplace_back(std::move(cur), *cert);
            continue;
        }
        std::vector<int> side;
        if (lg.n() <= opt.exhaustive_max_n) {
            auto c = exhaustive_conductance_serial(lg);
            for (VertexId v : c.witness) side.push_back(lg.index.at(v));
        } else {
            side = spectral_sweep(lg, phi, opt).side;
        }
        std::vector<char> mark(lg.n(), 0);
        for (int i : side) mark[i] = 1;
        std::vector<VertexId> a, b;
        for (int i = 0; i < lg.n(); ++i) (mark[i] ? a : b).push_back(lg.ids[i]);
        work.push_back(std::move(b));
        work.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first[0] < y.first[0]; });
    return out;
}

Decomposition expander_decompose(const Multigraph& g, double phi, double eps, const ExpanderOptions& opt) {
    if (!(phi > 0 && phi < 1)) throw InfeasibleParameters("phi must lie in (0,1)");
    if (eps < 0) throw InfeasibleParameters("eps must be non-negative");
    auto parts = decompose_vertices(g, g.vertex_list(), phi, opt);
    Decomposition d;
    std::vector<std::vector<VertexId>> cl;
    for (auto& [vs, cert] : parts) {
        cl.push_back(vs);
        d.certificate.clusters.push_back(cert);
    }
    d.partition = Partition::from_clusters(std::move(cl));
    d.certificate.intercluster = total_mult(intercluster_edges(g, d.partition));
    d.certificate.m = g.m();
    if (static_cast<double>(d.certificate.intercluster) > eps * static_cast<double>(g.m()) + 1e-9)
        throw InfeasibleParameters("achieved " + std::to_string(d.certificate.intercluster) +
                                   " intercluster edges > eps*m = " + std::to_string(eps * g.m()));
    return d;
}

std::variant<DecompositionCertificate, Violation> verify_decomposition(const Multigraph& g, const Partition& p,
                                                                       double phi, double eps,
                                                                       const ExpanderOptions& opt) {
    std::set<VertexId> seen;
    for (const auto& c : p.clusters)
        for (VertexId v : c)
            if (!seen.insert(v).second || !g.has_vertex(v))
                return Violation{-1, {v}, "not a partition of the vertex set"};
    if (seen.size() != g.n()) return Violation{-1, {}, "partition misses vertices"};
    DecompositionCertificate cert;
    for (std::size_t i = 0; i < p.clusters.size(); ++i) {
        LocalGraph lg = LocalGraph::induced(g, p.clusters[i]);
        if (lg.n() <= 1) {
            cert.clusters.push_back({Ratio{1, 1}, CertMethod::exhaustive, true});
            continue;
        }
        Conductance c = conductance_local(lg, opt);
        if (!c.lower.at_least(phi))
            return Violation{static_cast<int>(i), c.witness,
                             "conductance " + std::to_string(c.lower.value()) + " below phi"};
        cert.clusters.push_back({c.lower, c.exact ? CertMethod::exhaustive : CertMethod::flow_embedding, false});
    }
    cert.intercluster = total_mult(intercluster_edges(g, p));
    cert.m = g.m();
    if (static_cast<double>(cert.intercluster) > eps * static_cast<double>(g.m()) + 1e-9)
        return Violation{-1, {}, "intercluster " + std::to_string(cert.intercluster) + " exceeds eps*m"};
    return cert;
}

namespace {

std::int64_t boundary_in(const LocalGraph& g, const std::vector<char>& in) {
    std::int64_t b = 0;
    for (const auto& e : g.edges)
        if (in[e.a] != in[e.b]) b += e.mult;
    return b;
}

bool remainder_ok(const Multigraph& gd, const std::vector<VertexId>& rest, double target,
                  const ExpanderOptions& opt, Conductance* out = nullptr) {
    if (rest.size() <= 1) return true;
    LocalGraph lg = LocalGraph::induced(gd, rest);
    Conductance c = conductance_local(lg, opt);
    if (out) *out = c;
    return c.lower.at_least(target);
}

}  // namespace

PruneResult expander_prune(const Multigraph& g, double phi, const std::vector<std::pair<VertexId, VertexId>>& D,
                           const ExpanderOptions& opt) {
    PruneResult res;
    Multigraph gd = g;
    std::int64_t k = 0;
    for (auto [u, v] : D) k += gd.remove_edge(u, v).mult;
    if (k == 0) return res;
    if (static_cast<double>(k) > phi * static_cast<double>(g.m()) / 10.0)
        throw TooManyDeletions("k=" + std::to_string(k) + " > phi*m/10=" + std::to_string(phi * g.m() / 10.0));
    const double target = phi / 6.0;
    const double vol_cap = 8.0 * static_cast<double>(k) / phi;
    const std::int64_t cut_cap = 4 * k;

    auto all = g.vertex_list();
    LocalGraph before = LocalGraph::induced(g, all);
    LocalGraph after = LocalGraph::induced(gd, all);
    auto measure = [&](const std::vector<char>& in, PruneResult& r) {
        r.pruned.clear();
        r.vol = 0;
        for (int i = 0; i < before.n(); ++i)
            if (in[i]) {
                r.pruned.push_back(before.ids[i]);
                r.vol += before.deg[i];
            }
        r.boundary = boundary_in(after, in);
    };
    auto within = [&](const PruneResult& r) {
        return static_cast<double>(r.vol) <= vol_cap + 1e-9 && r.boundary <= cut_cap;
    };

    // greedy trimming: peel the sparse side of the remainder until it certifies
    std::vector<char> in(before.n(), 0);
    bool certified = false;
    for (int round = 0; round <= before.n(); ++round) {
        std::vector<VertexId> rest;
        for (int i = 0; i < before.n(); ++i)
            if (!in[i]) rest.push_back(before.ids[i]);
        Conductance c;
        if (remainder_ok(gd, rest, target, opt, &c)) {
            certified = true;
            break;
        }
        if (!c.exact && c.upper.at_least(target)) break;
        for (VertexId v : c.witness) in[before.index.at(v)] = 1;
    }
    if (certified) {
        measure(in, res);
        if (within(res)) return res;
    }

    if (before.n() <= 14) {
        const int n = before.n();
        PruneResult best;
        bool found = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<char> sel(n);
            std::int64_t vol = 0;
            for (int i = 0; i < n; ++i) {
                sel[i] = mask >> i & 1;
                if (sel[i]) vol += before.deg[i];
            }
            if (static_cast<double>(vol) > vol_cap + 1e-9 || (found && vol >= best.vol)) continue;
            if (boundary_in(after, sel) > cut_cap) continue;
            std::vector<VertexId> rest;
            for (int i = 0; i < n; ++i)
                if (!sel[i]) rest.push_back(before.ids[i]);
            if (!remainder_ok(gd, rest, target, opt)) continue;
            measure(sel, best);
            found = true;
        }
        if (found) return best;
    }
    res.pruned = all;
    res.vol = before.vol;
    res.boundary = 0;
    res.fallback = true;
    return res;
}

}  // namespace dmc
