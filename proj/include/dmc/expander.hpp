#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dmc/graph.hpp"
#include "dmc/local.hpp"

namespace dmc {

struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool at_least(double phi) const { return static_cast<double>(num) >= phi * static_cast<double>(den) - 1e-12; }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
};

struct Conductance {
    bool undefined = false;  // single vertex
    bool exact = false;
    Ratio lower;                   // certified
    Ratio upper;                   // realised by `witness`
    std::vector<VertexId> witness;  // smaller-volume side of the best cut found
};

struct ExpanderOptions {
    int exhaustive_max_n = 18;
    int power_iterations = 200;
    std::uint64_t seed = 0x5eed;
    bool parallel = false;  // OpenMP for the exhaustive kernel
};

Conductance conductance(const Multigraph& g, const ExpanderOptions& opt = {});
Conductance conductance_local(const LocalGraph& g, const ExpanderOptions& opt = {});

// Exhaustive minimum ratio cut over all bipartitions; the serial version is the reference for the parallel one.
Conductance exhaustive_conductance_serial(const LocalGraph& g);
Conductance exhaustive_conductance_parallel(const LocalGraph& g);

enum class CertMethod { exhaustive, flow_embedding, small_volume };

struct ClusterCert {
    Ratio phi_witness;
    CertMethod method;
    bool singleton = false;
};

struct DecompositionCertificate {
    std::vector<ClusterCert> clusters;  // parallel to Partition::clusters
    std::int64_t intercluster = 0;      // total multiplicity
    std::int64_t m = 0;
};

struct Violation {
    int cluster = -1;  // -1: intercluster budget overrun
    std::vector<VertexId> witness;
    std::string reason;
};

struct Decomposition {
    Partition partition;
    DecompositionCertificate certificate;
};

Decomposition expander_decompose(const Multigraph& g, double phi, double eps = 0.5, const ExpanderOptions& opt = {});
// Decomposition of the subgraph induced by S, without the intercluster budget check.
std::vector<std::pair<std::vector<VertexId>, ClusterCert>> decompose_vertices(const Multigraph& g,
                                                                             const std::vector<VertexId>& S,
                                                                             double phi,
                                                                             const ExpanderOptions& opt = {});

// Certified lower bound when it reaches phi; nullopt otherwise.
std::optional<ClusterCert> certify(const LocalGraph& g, double phi, const ExpanderOptions& opt = {});

std::variant<DecompositionCertificate, Violation> verify_decomposition(const Multigraph& g, const Partition& p,
                                                                       double phi, double eps,
                                                                       const ExpanderOptions& opt = {});

struct PruneResult {
    std::vector<VertexId> pruned;
    std::int64_t vol = 0;       // in g before deletion
    std::int64_t boundary = 0;  // in g minus D
    bool fallback = false;      // whole vertex set returned
};

// g is the expander before deletion; D are the deleted pairs.
PruneResult expander_prune(const Multigraph& g, double phi, const std::vector<std::pair<VertexId, VertexId>>& D,
                           const ExpanderOptions& opt = {});

}  // namespace dmc
