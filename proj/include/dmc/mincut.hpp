#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dmc/localcuts.hpp"
#include "dmc/sparsify.hpp"

namespace dmc {

struct HierarchyConfig {
    double phi_floor = 1e-3;
    double k_phi = 2.0;
    int zeta = 0;      // 0: derive from n, clamped to [1, zeta_cap]
    int zeta_cap = 3;
    int max_levels = 32;
    double eps = 1.0;  // intercluster budget per level; shrinkage is checked separately
    bool parallel = false;
    ExpanderOptions expander;
    ContainmentOptions containment;
};

struct ParameterSchedule {
    int zeta = 1;
    std::vector<std::int64_t> c;  // c[0] > ... > c[zeta]
    std::vector<double> phi;
    std::int64_t gamma = 0;
    std::int64_t alpha = 0;
};

ParameterSchedule schedule_params(int c, std::int64_t n, const HierarchyConfig& cfg = {});

struct OneLevelMinCutDS {
    OneLevelECDS ec;
    AuxGraph aux;
    LocalCutQueue lambda;
    int c = 1;
    std::int64_t alpha = 1;
    bool parallel = false;
};

OneLevelMinCutDS mc_one_init(const Multigraph& g, int c, double phi, int grade, std::int64_t gamma,
                             std::int64_t alpha, const ECParams& base = {}, bool parallel = false);
// Returns the update sequence for the level above.
UpdateSeq mc_one_update(OneLevelMinCutDS& ds, const UpdateSeq& seq, int out_grade, double out_phi);
// Λ recomputed from nothing for the current tuple.
LocalCutQueue rebuild_lambda(const OneLevelMinCutDS& ds);

struct MultiLevelMinCutDS {
    std::vector<OneLevelMinCutDS> levels;
    ParameterSchedule sched;
    HierarchyConfig cfg;
    int c = 1;
    int batches = 0;
};

MultiLevelMinCutDS mc_multi_init(const Multigraph& g, int c, const HierarchyConfig& cfg = {});
MultiLevelMinCutDS mc_multi_init(const Multigraph& g, int c, const ParameterSchedule& sched,
                                 const HierarchyConfig& cfg);
void mc_multi_update(MultiLevelMinCutDS& mds, const UpdateSeq& seq);

struct QueryResult {
    bool empty = true;  // min cut exceeds c
    std::int64_t size = 0;
    std::vector<EdgeRec> cutset;  // edges of the input graph
    std::vector<VertexId> side_hint;
    int level = -1;  // level whose Λ supplied the cut; -1 for the disconnected case
};

QueryResult query_min_cut(const MultiLevelMinCutDS& mds);
std::string query_json(const QueryResult& r);

struct InstancePool {
    Multigraph graph;  // the up-to-date input graph
    int c = 1;
    int xi = 1;
    int w = 12;
    std::int64_t branching = 12;  // checkpoint spacing base, ceil(w^(1/xi))
    HierarchyConfig cfg;
    UpdateSeq pending;  // ops since the base instance was built
    // chain[j] has absorbed the first covered[j] pending ops in j batches
    std::vector<MultiLevelMinCutDS> chain;
    std::vector<std::size_t> covered;
    MultiLevelMinCutDS current;
    std::int64_t rebuilds = 0;
};

InstancePool fd_init(const Multigraph& g, int c, int xi, int w, const HierarchyConfig& cfg = {});
void fd_update(InstancePool& pool, const UpdateOp& op);
const MultiLevelMinCutDS& fd_current(const InstancePool& pool);

}  // namespace dmc
