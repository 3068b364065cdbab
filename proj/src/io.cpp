#include "dmc/io.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace dmc {

namespace {

bool skip_line(const std::string& line) {
    auto p = line.find_first_not_of(" \t\r");
    return p == std::string::npos || line[p] == '#';
}

std::vector<std::int64_t> numbers(const std::string& line, std::size_t from, int lineno) {
    std::istringstream is(line.substr(from));
    std::vector<std::int64_t> out;
    std::string tok;
    while (is >> tok) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw ParseError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::int64_t n = -1, lines = -1, seen = 0;
    Multigraph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto v = numbers(line, 0, lineno);
        if (n < 0) {
            if (v.size() != 2 || v[0] < 0 || v[1] < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected \"n m_lines\"");
            n = v[0];
            lines = v[1];
            for (std::int64_t i = 0; i < n; ++i) g.add_vertex(i);
            continue;
        }
        if (v.size() != 3) throw ParseError("line " + std::to_string(lineno) + ": expected \"u v multiplicity\"");
        if (seen == lines) throw ParseError("line " + std::to_string(lineno) + ": more edge lines than declared");
        if (v[0] < 0 || v[0] >= n || v[1] < 0 || v[1] >= n)
            throw ParseError("line " + std::to_string(lineno) + ": vertex out of range");
        if (v[2] < 1 || v[2] > (1 << 30)) throw ParseError("line " + std::to_string(lineno) + ": bad multiplicity");
        try {
            g.add_edge(v[0], v[1], static_cast<int>(v[2]));
        } catch (const Error& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        ++seen;
    }
    if (n < 0) throw ParseError("line " + std::to_string(lineno) + ": missing header");
    if (seen != lines)
        throw ParseError("line " + std::to_string(lineno) + ": " + std::to_string(lines) + " edge lines declared, " +
                         std::to_string(seen) + " found");
    return g;
}

Multigraph parse_graph_text(const std::string& text) {
    std::istringstream is(text);
    return parse_graph(is);
}

std::string write_graph(const Multigraph& g) { return g.serialize(); }

std::vector<StreamItem> parse_stream(std::istream& in) {
    std::vector<StreamItem> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        std::istringstream is(line);
        std::string cmd;
        is >> cmd;
        auto v = numbers(line, line.find(cmd) + cmd.size(), lineno);
        auto want = [&](std::size_t k) {
            if (v.size() != k)
                throw ParseError("line " + std::to_string(lineno) + ": '" + cmd + "' takes " + std::to_string(k) +
                                 " arguments");
        };
        StreamItem it;
        it.line = lineno;
        if (cmd == "q") {
            want(0);
            it.query = true;
        } else if (cmd == "ie") {
            want(3);
            if (v[2] < 1) throw ParseError("line " + std::to_string(lineno) + ": bad multiplicity");
            it.op = UpdateOp::ie(v[0], v[1], static_cast<int>(v[2]));
        } else if (cmd == "de") {
            want(2);
            it.op = UpdateOp::de(v[0], v[1]);
        } else if (cmd == "iv") {
            want(1);
            it.op = UpdateOp::iv(v[0]);
        } else if (cmd == "dv") {
            want(1);
            it.op = UpdateOp::dv(v[0]);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown op '" + cmd + "'");
        }
        out.push_back(it);
    }
    return out;
}

std::vector<StreamItem> parse_stream_text(const std::string& text) {
    std::istringstream is(text);
    return parse_stream(is);
}

std::string write_stream(const std::vector<StreamItem>& items, const std::string& header) {
    std::string s;
    if (!header.empty()) s += "# " + header + "\n";
    for (const auto& it : items) s += (it.query ? std::string("q") : it.op.str()) + "\n";
    return s;
}

UpdateSeq ops_of(const std::vector<StreamItem>& items) {
    UpdateSeq out;
    for (const auto& it : items)
        if (!it.query) out.push_back(it.op);
    return out;
}

namespace {

struct EdgePool {
    std::vector<std::pair<VertexId, VertexId>> list;
    std::map<std::pair<VertexId, VertexId>, std::size_t> at;

    static std::pair<VertexId, VertexId> key(VertexId a, VertexId b) { return {std::min(a, b), std::max(a, b)}; }
    bool has(VertexId a, VertexId b) const { return at.count(key(a, b)) != 0; }
    void add(VertexId a, VertexId b) {
        at[key(a, b)] = list.size();
        list.push_back(key(a, b));
    }
    void remove(VertexId a, VertexId b) {
        auto it = at.find(key(a, b));
        std::size_t i = it->second;
        at.erase(it);
        if (i + 1 != list.size()) {
            list[i] = list.back();
            at[list[i]] = i;
        }
        list.pop_back();
    }
};

struct Builder {
    std::mt19937_64 rng;
    Multigraph g;  // evolving state
    EdgePool edges;
    Generated out;

    explicit Builder(std::uint64_t seed) : rng(seed) {}
    std::int64_t pick(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
    int mult() { return unit() < 0.85 ? 1 : 2; }

    void init_edge(VertexId a, VertexId b, int m) {
        g.add_edge(a, b, m);
        edges.add(a, b);
    }
    void emit(const UpdateOp& op) {
        g.apply(op);
        if (op.kind == UpdateOp::insert_edge) edges.add(op.u, op.v);
        if (op.kind == UpdateOp::delete_edge) edges.remove(op.u, op.v);
        out.stream.push_back({false, op, 0});
    }
    void random_graph(int n, double avg_degree) {
        for (int i = 0; i < n; ++i) g.add_vertex(i);
        for (int i = 1; i < n; ++i) init_edge(i, pick(0, i - 1), mult());
        std::int64_t target = static_cast<std::int64_t>(avg_degree * n / 2.0);
        for (int tries = 0; static_cast<std::int64_t>(edges.list.size()) < target && tries < 50 * n; ++tries) {
            VertexId a = pick(0, n - 1), b = pick(0, n - 1);
            if (a != b && !edges.has(a, b)) init_edge(a, b, mult());
        }
        out.g = g;
    }
};

}  // namespace

Generated gen_random_toggle(int n, int ops, std::uint64_t seed, double avg_degree) {
    Builder b(seed);
    b.random_graph(n, avg_degree);
    std::vector<VertexId> alive;
    for (int i = 0; i < n; ++i) alive.push_back(i);
    VertexId next = n;
    for (int k = 0; k < ops; ++k) {
        double r = b.unit();
        if (r < 0.03) {
            b.emit(UpdateOp::iv(next));
            alive.push_back(next++);
            continue;
        }
        if (r < 0.05) {
            std::vector<std::size_t> iso;
            for (std::size_t i = 0; i < alive.size(); ++i)
                if (b.g.neighbors(alive[i]).empty()) iso.push_back(i);
            if (!iso.empty() && alive.size() > 2) {
                std::size_t i = iso[b.pick(0, static_cast<std::int64_t>(iso.size()) - 1)];
                b.emit(UpdateOp::dv(alive[i]));
                alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
        }
        if (b.unit() < 0.5 && !b.edges.list.empty()) {
            auto [u, v] = b.edges.list[b.pick(0, static_cast<std::int64_t>(b.edges.list.size()) - 1)];
            b.emit(UpdateOp::de(u, v));
            continue;
        }
        VertexId u = alive[b.pick(0, static_cast<std::int64_t>(alive.size()) - 1)];
        VertexId v = alive[b.pick(0, static_cast<std::int64_t>(alive.size()) - 1)];
        if (u == v) v = alive[(std::find(alive.begin(), alive.end(), u) - alive.begin() + 1) % alive.size()];
        if (b.edges.has(u, v))
            b.emit(UpdateOp::de(u, v));
        else
            b.emit(UpdateOp::ie(u, v, b.mult()));
    }
    return std::move(b.out);
}

Generated gen_planted_cut(int n, int ops, std::uint64_t seed) {
    Builder b(seed);
    const int k = std::max(2, n / 16);
    std::vector<std::vector<VertexId>> comm(k);
    std::vector<int> comm_of(n);
    for (int v = 0; v < n; ++v) {
        comm[v % k].push_back(v);
        comm_of[v] = v % k;
    }
    for (int v = 0; v < n; ++v) b.g.add_vertex(v);
    std::vector<int> intdeg(n, 0);
    auto internal = [&](VertexId a, VertexId c2) {
        b.init_edge(a, c2, 1);
        intdeg[a]++;
        intdeg[c2]++;
    };
    for (const auto& C : comm) {
        const int s = static_cast<int>(C.size());
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (b.unit() < 0.75) internal(C[i], C[j]);
        const int need = std::min(10, s - 1);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s && intdeg[C[i]] < need; ++j)
                if (i != j && !b.edges.has(C[i], C[j])) internal(C[i], C[j]);
    }
    const int ha = k / 2;
    auto link_half = [&](int lo, int hi) {
        const int h = hi - lo;
        std::set<std::pair<int, int>> done;
        for (int i = 0; i < h; ++i)
            for (int d : {1, 2}) {
                int j = (i + d) % h;
                if (j == i || !done.insert({std::min(i, j), std::max(i, j)}).second) continue;
                for (int copies = 0; copies < 2;) {
                    VertexId a = comm[lo + i][b.pick(0, static_cast<std::int64_t>(comm[lo + i].size()) - 1)];
                    VertexId c2 = comm[lo + j][b.pick(0, static_cast<std::int64_t>(comm[lo + j].size()) - 1)];
                    if (b.edges.has(a, c2)) continue;
                    b.init_edge(a, c2, 1);
                    ++copies;
                }
            }
    };
    link_half(0, ha);
    link_half(ha, k);
    std::vector<VertexId> sideA, sideB;
    for (int v = 0; v < n; ++v) (comm_of[v] < ha ? sideA : sideB).push_back(v);
    std::vector<std::pair<VertexId, VertexId>> planted;
    auto random_cross = [&]() {
        while (true) {
            VertexId a = sideA[b.pick(0, static_cast<std::int64_t>(sideA.size()) - 1)];
            VertexId c2 = sideB[b.pick(0, static_cast<std::int64_t>(sideB.size()) - 1)];
            if (!b.edges.has(a, c2)) return std::pair<VertexId, VertexId>{a, c2};
        }
    };
    for (int i = 0; i < 2; ++i) {
        auto [a, c2] = random_cross();
        b.init_edge(a, c2, 1);
        planted.push_back({a, c2});
    }
    b.out.g = b.g;
    b.out.sizes.push_back(static_cast<std::int64_t>(planted.size()));

    for (int op = 0; op < ops; ++op) {
        if (b.unit() < 0.3) {
            const auto s = planted.size();
            bool grow = s == 1 || (s < 3 && b.unit() < 0.5);
            if (grow) {
                auto [a, c2] = random_cross();
                b.emit(UpdateOp::ie(a, c2, 1));
                planted.push_back({a, c2});
            } else {
                std::size_t i = static_cast<std::size_t>(b.pick(0, static_cast<std::int64_t>(s) - 1));
                b.emit(UpdateOp::de(planted[i].first, planted[i].second));
                planted.erase(planted.begin() + static_cast<std::ptrdiff_t>(i));
            }
        } else {
            while (true) {
                const auto& C = comm[b.pick(0, k - 1)];
                VertexId u = C[b.pick(0, static_cast<std::int64_t>(C.size()) - 1)];
                VertexId v = C[b.pick(0, static_cast<std::int64_t>(C.size()) - 1)];
                if (u == v) continue;
                if (!b.edges.has(u, v)) {
                    b.emit(UpdateOp::ie(u, v, 1));
                    intdeg[u]++;
                    intdeg[v]++;
                    break;
                }
                if (intdeg[u] > 8 && intdeg[v] > 8 && b.g.find_edge(u, v)->mult == 1) {
                    b.emit(UpdateOp::de(u, v));
                    intdeg[u]--;
                    intdeg[v]--;
                    break;
                }
            }
        }
        b.out.sizes.push_back(static_cast<std::int64_t>(planted.size()));
    }
    return std::move(b.out);
}

Generated gen_churn_burst(int n, int ops, std::uint64_t seed) {
    Builder b(seed);
    b.random_graph(n, 4.0);
    int k = 0;
    while (k < ops) {
        VertexId center = b.pick(0, n - 1);
        std::vector<VertexId> region{center};
        for (const auto& h : b.g.neighbors(center)) region.push_back(h.to);
        int len = static_cast<int>(b.pick(8, 20));
        for (int i = 0; i < len && k < ops; ++i, ++k) {
            VertexId u = region[b.pick(0, static_cast<std::int64_t>(region.size()) - 1)];
            const auto& nb = b.g.neighbors(u);
            if (b.unit() < 0.5 && !nb.empty()) {
                VertexId v = nb[b.pick(0, static_cast<std::int64_t>(nb.size()) - 1)].to;
                b.emit(UpdateOp::de(u, v));
                continue;
            }
            VertexId v = b.unit() < 0.8 ? region[b.pick(0, static_cast<std::int64_t>(region.size()) - 1)] : b.pick(0, n - 1);
            if (u == v) v = (u + 1) % n;
            if (b.edges.has(u, v))
                b.emit(UpdateOp::de(u, v));
            else
                b.emit(UpdateOp::ie(u, v, b.mult()));
        }
    }
    return std::move(b.out);
}

Generated generate(const std::string& kind, int n, int ops, std::uint64_t seed) {
    if (kind == "random-toggle") return gen_random_toggle(n, ops, seed);
    if (kind == "planted-cut") return gen_planted_cut(n, ops, seed);
    if (kind == "churn-burst") return gen_churn_burst(n, ops, seed);
    throw ConfigError("unknown generator kind '" + kind + "'");
}

}  // namespace dmc
