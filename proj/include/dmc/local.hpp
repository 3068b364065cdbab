#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

// Dense re-indexing of an induced subgraph; the working form for cluster-sized kernels.
struct LocalGraph {
    struct Arc {
        int to;
        int mult;
        int edge;
    };
    struct LEdge {
        int a, b;
        int mult;
        EdgeId eid;
    };

    std::vector<VertexId> ids;
    std::unordered_map<VertexId, int> index;
    std::vector<std::vector<Arc>> adj;
    std::vector<LEdge> edges;
    std::vector<std::int64_t> deg;
    std::int64_t vol = 0;

    static LocalGraph induced(const Multigraph& g, const std::vector<VertexId>& S);
    static LocalGraph whole(const Multigraph& g) { return induced(g, g.vertex_list()); }

    int n() const { return static_cast<int>(ids.size()); }
    std::vector<VertexId> to_ids(const std::vector<int>& local) const;

    // Component label per local vertex, skipping edges whose flag in `removed` is set.
    int components(std::vector<int>& label, const std::vector<char>* removed = nullptr) const;
};

struct FlowResult {
    std::int64_t value = 0;
    std::vector<char> source_side;  // residual reachability from the sources
};

// Undirected max-flow by shortest augmenting paths, stopping once `limit` is reached.
FlowResult max_flow(const LocalGraph& g, const std::vector<std::int64_t>& cap, const std::vector<int>& sources,
                    const std::vector<int>& sinks, std::int64_t limit);

std::vector<std::int64_t> capped_caps(const LocalGraph& g, std::int64_t cap);

}  // namespace dmc
