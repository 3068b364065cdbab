#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dmc/io.hpp"
#include "dmc/mincut.hpp"

namespace dmc::cli {

struct Config {
    int c = 1;
    int xi = 1;
    int w = 12;
    int max_levels = 32;
    double k_phi = 2.0;
    double phi_floor = 1e-3;
    int zeta_cap = 3;
    int verify_cap = 200;      // largest n accepted by verify
    std::uint64_t seed = 1;
    bool simple = false;
    bool queries_only = false;
    std::string format = "json";  // json | csv
    bool baseline_only = false;
    int baseline_every = 1;       // bench: run the baseline on every k-th op (0 = never)
    std::string dump_dir;         // verify: write final partitions and sparsifiers here

    HierarchyConfig hierarchy() const;
    void validate() const;  // throws ConfigError
};

struct RunRecord {
    std::int64_t op_index = 0;  // 1-based position in the stream
    std::string op;             // stream line
    std::optional<std::int64_t> answer_size;
    std::vector<std::array<std::int64_t, 3>> cutset;  // u v mult in the input graph
    std::int64_t elapsed_ns = 0;
};

std::string record_json(const RunRecord& r);
std::string record_csv(const RunRecord& r);

// Engine over either the multigraph input or, with simple=true, its degree-reduced form.
class Driver {
public:
    Driver(const Multigraph& g, const Config& cfg);
    ~Driver();
    Driver(const Driver&) = delete;
    Driver& operator=(const Driver&) = delete;

    void apply(const UpdateOp& op);
    RunRecord answer() const;
    const Multigraph& graph() const;  // current input graph

private:
    struct Impl;
    Impl* impl_;
};

std::vector<RunRecord> run_records(const Multigraph& g, const std::vector<StreamItem>& stream, const Config& cfg);

struct BenchRow {
    std::int64_t op_index = 0;
    std::optional<std::int64_t> engine_ns;
    std::optional<std::int64_t> baseline_ns;
    std::optional<std::int64_t> answer_size;
};

std::vector<BenchRow> bench_rows(const Multigraph& g, const std::vector<StreamItem>& stream, const Config& cfg);
std::string bench_csv(const std::vector<BenchRow>& rows);

int cmd_run(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out);
int cmd_verify(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out);
int cmd_gen(const std::string& kind, int n, int ops, std::uint64_t seed, const std::string& prefix);
int cmd_bench(const std::string& graph_file, const std::string& stream_file, const Config& cfg, std::ostream& out);

// Full command line; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmc::cli
