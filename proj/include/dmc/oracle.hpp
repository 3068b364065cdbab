#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dmc/graph.hpp"
#include "dmc/localcuts.hpp"
#include "dmc/mincut.hpp"

// Ground truth that shares no code with the engine beyond the Multigraph container.
namespace dmc::oracle {

struct OracleResult {
    bool infinite = false;  // fewer than two vertices
    std::int64_t min_cut_size = 0;
    std::vector<EdgeRec> witness;
    std::vector<VertexId> side;
    std::string method;  // exhaustive | stoer-wagner | max-flow | components
};

OracleResult brute_min_cut(const Multigraph& g, int exhaustive_max_n = 20);
OracleResult exhaustive_min_cut(const Multigraph& g);
OracleResult stoer_wagner(const Multigraph& g);

std::int64_t steiner_min_cut(const Multigraph& g, const std::vector<VertexId>& A, const std::vector<VertexId>& B,
                             std::int64_t cap);

// All qualifying U of the cluster view, as sorted id lists with t_P included when present.
std::set<std::vector<VertexId>> brute_local_cuts(const AuxGraph& aux, const Multigraph& g, int cluster,
                                                 std::int64_t alpha, int c);

struct CheckRecord {
    std::int64_t op_index = 0;  // 0 is the initial graph
    std::optional<std::int64_t> expected;
    std::optional<std::int64_t> got;
    bool ok = true;
    std::string detail;
    std::string snapshot;  // graph state, only on mismatch
};

struct StreamReport {
    std::vector<CheckRecord> checks;
    std::int64_t mismatches = 0;
    std::string jsonl() const;
};

// Checks an answer against the graph it claims to cut.  Empty string when consistent.
std::string check_answer(const Multigraph& g, const QueryResult& r, int c, const OracleResult& truth);

// Called after every applied op, before the answer is checked.
using OpHook = std::function<void(const InstancePool&, std::int64_t op_index)>;

StreamReport verify_stream(const Multigraph& g0, const UpdateSeq& stream, int c, int xi, int w,
                           const HierarchyConfig& cfg = {}, const OpHook& hook = {});

}  // namespace dmc::oracle
