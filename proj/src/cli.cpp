#include "dmc/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "dmc/degree.hpp"
#include "dmc/oracle.hpp"

namespace dmc::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ns_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

int log_level() {
    const char* s = std::getenv("DMC_LOG");
    return s ? std::atoi(s) : 0;
}

void log(int level, const std::string& msg) {
    if (log_level() >= level) std::cerr << "[dmc] " << msg << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Multigraph load_graph(const std::string& path) {
    try {
        return parse_graph_text(slurp(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::vector<StreamItem> load_stream(const std::string& path) {
    try {
        return parse_stream_text(slurp(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SimpleOp to_simple(const UpdateOp& op) {
    switch (op.kind) {
        case UpdateOp::insert_edge:
            if (op.mult != 1) throw ConfigError("--simple: insertion " + op.str() + " has multiplicity != 1");
            return {SimpleOp::insert_edge, op.u, op.v};
        case UpdateOp::delete_edge: return {SimpleOp::delete_edge, op.u, op.v};
        case UpdateOp::insert_vertex: return {SimpleOp::insert_vertex, op.u, 0};
        case UpdateOp::delete_vertex: return {SimpleOp::delete_vertex, op.u, 0};
    }
    return {};
}

std::pair<Multigraph, SimpleMirror> reduce_input(const Multigraph& g, int c) {
    std::vector<SimpleEdge> es;
    for (const auto& e : g.edge_list()) {
        if (e.mult != 1) throw ConfigError("--simple: edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                                           " has multiplicity " + std::to_string(e.mult));
        es.push_back({e.u, e.v});
    }
    return degree_reduce(g.vertex_list(), es, c);
}

}  // namespace

HierarchyConfig Config::hierarchy() const {
    HierarchyConfig h;
    h.max_levels = max_levels;
    h.k_phi = k_phi;
    h.phi_floor = phi_floor;
    h.zeta_cap = zeta_cap;
    return h;
}

void Config::validate() const {
    if (c < 1) throw ConfigError("c must be at least 1");
    if (xi < 1) throw ConfigError("xi must be at least 1");
    double need = 2.0;
    for (int i = 0; i < xi; ++i) need *= 6.0;
    if (w < need) throw ConfigError("w must be at least 2*6^xi = " + std::to_string(static_cast<long long>(need)));
    if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
    if (baseline_every < 0) throw ConfigError("baseline_every must be non-negative");
    if (max_levels < 1 || k_phi <= 1.0 || phi_floor <= 0.0 || zeta_cap < 1)
        throw ConfigError("hierarchy thresholds below viable minimum");
}

std::string record_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["op_index"] = r.op_index;
    j["op"] = r.op;
    j["answer_size"] = r.answer_size ? nlohmann::ordered_json(*r.answer_size) : nlohmann::ordered_json(nullptr);
    j["cutset"] = nlohmann::ordered_json::array();
    for (const auto& e : r.cutset) j["cutset"].push_back({e[0], e[1], e[2]});
    j["elapsed_ns"] = r.elapsed_ns;
    return j.dump();
}

std::string record_csv(const RunRecord& r) {
    std::string cut;
    for (const auto& e : r.cutset) {
        if (!cut.empty()) cut += ' ';
        cut += std::to_string(e[0]) + "-" + std::to_string(e[1]) + "x" + std::to_string(e[2]);
    }
    return std::to_string(r.op_index) + "," + r.op + "," + (r.answer_size ? std::to_string(*r.answer_size) : "") +
           "," + cut + "," + std::to_string(r.elapsed_ns);
}

struct Driver::Impl {
    Config cfg;
    Multigraph input;
    SimpleMirror mirror;
    InstancePool pool;
};

Driver::Driver(const Multigraph& g, const Config& cfg) : impl_(new Impl) {
    cfg.validate();
    impl_->cfg = cfg;
    impl_->input = g;
    if (cfg.simple) {
        auto [reduced, mirror] = reduce_input(g, cfg.c);
        impl_->mirror = std::move(mirror);
        impl_->pool = fd_init(reduced, cfg.c, cfg.xi, cfg.w, cfg.hierarchy());
    } else {
        impl_->pool = fd_init(g, cfg.c, cfg.xi, cfg.w, cfg.hierarchy());
    }
}

Driver::~Driver() { delete impl_; }

const Multigraph& Driver::graph() const { return impl_->input; }

void Driver::apply(const UpdateOp& op) {
    if (impl_->cfg.simple) {
        auto seq = reduce_update(impl_->mirror, to_simple(op));
        impl_->input.apply(op);
        for (const auto& r : seq) fd_update(impl_->pool, r);
    } else {
        impl_->input.apply(op);
        fd_update(impl_->pool, op);
    }
}

RunRecord Driver::answer() const {
    RunRecord rec;
    auto q = query_min_cut(fd_current(impl_->pool));
    if (q.empty) return rec;
    rec.answer_size = q.size;
    if (impl_->cfg.simple) {
        for (const auto& e : lift_cutset(impl_->mirror, q.cutset)) rec.cutset.push_back({e.u, e.w, 1});
    } else {
        for (const auto& e : q.cutset) rec.cutset.push_back({e.u, e.v, e.mult});
    }
    return rec;
}

std::vector<RunRecord> run_records(const Multigraph& g, const std::vector<StreamItem>& stream, const Config& cfg) {
    std::vector<RunRecord> out;
    Driver d(g, cfg);
    std::int64_t idx = 0;
    for (const auto& it : stream) {
        ++idx;
        std::int64_t ns = 0;
        if (!it.query) {
            auto t = Clock::now();
            d.apply(it.op);
            ns = ns_since(t);
            log(2, "op " + std::to_string(idx) + " " + it.op.str() + " " + std::to_string(ns) + "ns");
            if (cfg.queries_only) continue;
        }
        auto r = d.answer();
        r.op_index = idx;
        r.op = it.query ? "q" : it.op.str();
        r.elapsed_ns = ns;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<BenchRow> bench_rows(const Multigraph& g, const std::vector<StreamItem>& stream, const Config& cfg) {
    std::vector<BenchRow> rows;
    std::optional<Driver> d;
    Multigraph cur = g;
    if (!cfg.baseline_only) d.emplace(g, cfg);
    std::int64_t idx = 0;
    for (const auto& it : stream) {
        ++idx;
        if (it.query) continue;
        BenchRow row;
        row.op_index = idx;
        cur.apply(it.op);
        if (d) {
            auto t = Clock::now();
            d->apply(it.op);
            auto r = d->answer();
            row.engine_ns = ns_since(t);
            row.answer_size = r.answer_size;
        }
        if (cfg.baseline_every > 0 && (idx - 1) % cfg.baseline_every == 0) {
            auto t = Clock::now();
            auto truth = oracle::stoer_wagner(cur);
            row.baseline_ns = ns_since(t);
            if (!d && !truth.infinite && truth.min_cut_size <= cfg.c) row.answer_size = truth.min_cut_size;
            log(1, "baseline at op " + std::to_string(idx) + ": " + std::to_string(*row.baseline_ns) + "ns");
        }
        rows.push_back(row);
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
    std::string s = "op_index,engine_ns,baseline_ns,answer_size\n";
    for (const auto& r : rows)
        s += std::to_string(r.op_index) + "," + opt(r.engine_ns) + "," + opt(r.baseline_ns) + "," +
             opt(r.answer_size) + "\n";
    return s;
}

int cmd_run(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out) {
    cfg.validate();
    auto g = load_graph(graph_file);
    auto stream = load_stream(stream_file);
    auto recs = run_records(g, stream, cfg);
    if (cfg.format == "csv") out << "op_index,op,answer_size,cutset,elapsed_ns\n";
    for (const auto& r : recs) out << (cfg.format == "csv" ? record_csv(r) : record_json(r)) << "\n";
    return 0;
}

int cmd_verify(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out) {
    cfg.validate();
    auto g = load_graph(graph_file);
    auto ops = ops_of(load_stream(stream_file));
    if (cfg.simple) {
        // the oracle checks the reduced multigraph, which carries the same small cuts
        auto [reduced, mirror] = reduce_input(g, cfg.c);
        UpdateSeq red;
        for (const auto& op : ops)
            for (const auto& r : reduce_update(mirror, to_simple(op))) red.push_back(r);
        g = std::move(reduced);
        ops = std::move(red);
    }
    std::size_t peak = g.n();
    Multigraph probe = g;
    for (const auto& op : ops) {
        probe.apply(op);
        peak = std::max(peak, probe.n());
    }
    if (peak > static_cast<std::size_t>(cfg.verify_cap))
        throw SizeCapExceeded("graph reaches " + std::to_string(peak) + " vertices, cap is " +
                              std::to_string(cfg.verify_cap));
    InstancePool last;
    auto keep = [&](const InstancePool& p, std::int64_t) {
        if (!cfg.dump_dir.empty()) last = p;
    };
    auto rep = oracle::verify_stream(g, ops, cfg.c, cfg.xi, cfg.w, cfg.hierarchy(), keep);
    out << rep.jsonl();
    if (!cfg.dump_dir.empty()) {
        if (ops.empty()) last = fd_init(g, cfg.c, cfg.xi, cfg.w, cfg.hierarchy());
        std::filesystem::create_directories(cfg.dump_dir);
        const auto& mds = fd_current(last);
        for (std::size_t i = 0; i < mds.levels.size(); ++i) {
            const auto& ec = mds.levels[i].ec;
            std::ofstream(cfg.dump_dir + "/level" + std::to_string(i) + ".partition") << ec.partition().serialize();
            std::ofstream(cfg.dump_dir + "/level" + std::to_string(i) + ".sparsifier")
                << dump_sparsifier(ec.sparsifier());
        }
    }
    log(1, std::to_string(rep.checks.size()) + " checks, " + std::to_string(rep.mismatches) + " mismatches");
    return rep.mismatches == 0 ? 0 : 1;
}

int cmd_gen(const std::string& kind, int n, int ops, std::uint64_t seed, const std::string& prefix) {
    if (n < 2) throw ConfigError("gen needs n >= 2");
    if (ops < 0) throw ConfigError("gen needs ops >= 0");
    auto gen = generate(kind, n, ops, seed);
    std::string header = kind + " n=" + std::to_string(n) + " ops=" + std::to_string(ops) + " seed=" +
                         std::to_string(seed);
    std::ofstream(prefix + ".graph") << write_graph(gen.g);
    std::ofstream(prefix + ".stream") << write_stream(gen.stream, header);
    if (!gen.sizes.empty()) {
        std::ofstream sz(prefix + ".sizes");
        for (auto s : gen.sizes) sz << s << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out) {
    cfg.validate();
    auto rows = bench_rows(load_graph(graph_file), load_stream(stream_file), cfg);
    if (cfg.format == "csv") {
        out << bench_csv(rows);
        return 0;
    }
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["op_index"] = r.op_index;
        j["engine_ns"] = r.engine_ns ? nlohmann::ordered_json(*r.engine_ns) : nlohmann::ordered_json(nullptr);
        j["baseline_ns"] = r.baseline_ns ? nlohmann::ordered_json(*r.baseline_ns) : nlohmann::ordered_json(nullptr);
        j["answer_size"] = r.answer_size ? nlohmann::ordered_json(*r.answer_size) : nlohmann::ordered_json(nullptr);
        out << j.dump() << "\n";
    }
    return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"dynamic minimum c-cut engine"};
    app.set_config("--config", "", "flat key=value file; command-line flags win");
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--c", cfg.c, "cut bound");
    app.add_option("--xi", cfg.xi, "batching depth");
    app.add_option("--w", cfg.w, "instance window");
    app.add_option("--max-levels", cfg.max_levels);
    app.add_option("--k-phi", cfg.k_phi);
    app.add_option("--phi-floor", cfg.phi_floor);
    app.add_option("--zeta-cap", cfg.zeta_cap);
    app.add_option("--verify-cap", cfg.verify_cap);
    app.add_option("--seed", cfg.seed);
    app.add_flag("--simple", cfg.simple, "input is a simple graph; reduce degree first");
    app.add_flag("--queries-only", cfg.queries_only, "answer only at q markers");
    app.add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--baseline-only", cfg.baseline_only);
    app.add_option("--baseline-every", cfg.baseline_every);
    app.add_option("--dump", cfg.dump_dir, "verify: directory for final partitions and sparsifiers");

    std::string graph_file, stream_file, kind, prefix = "out";
    int n = 0, ops = 0;
    auto* run = app.add_subcommand("run", "replay a stream, one answer per op");
    auto* verify = app.add_subcommand("verify", "replay against the oracle");
    auto* bench = app.add_subcommand("bench", "per-op latency against a from-scratch baseline");
    for (auto* sc : {run, verify, bench}) {
        sc->add_option("graph", graph_file)->required();
        sc->add_option("stream", stream_file)->required();
    }
    auto* gen = app.add_subcommand("gen", "write a synthetic graph and stream");
    gen->add_option("kind", kind)->required()->check(CLI::IsMember({"random-toggle", "planted-cut", "churn-burst"}));
    gen->add_option("n", n)->required();
    gen->add_option("ops", ops)->required();
    gen->add_option("-o,--out", prefix, "output prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*run) return cmd_run(graph_file, stream_file, cfg, out);
        if (*verify) return cmd_verify(graph_file, stream_file, cfg, out);
        if (*bench) return cmd_bench(graph_file, stream_file, cfg, out);
        if (*gen) return cmd_gen(kind, n, ops, cfg.seed, prefix);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const SizeCapExceeded& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const PreconditionViolated& e) {
        // the stream does not fit the graph it is replayed on
        err << e.what() << "\n";
        return 2;
    } catch (const UnknownVertex& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace dmc::cli
