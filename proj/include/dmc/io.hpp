#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "dmc/graph.hpp"

namespace dmc {

// Graph file: "n m_lines" then m_lines of "u v multiplicity"; vertices are 0..n-1.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph_text(const std::string& text);
std::string write_graph(const Multigraph& g);

struct StreamItem {
    bool query = false;
    UpdateOp op{};
    int line = 0;
};

// One op per line: "ie u v a", "de u v", "iv v", "dv v", or "q". Lines starting with '#' are skipped.
std::vector<StreamItem> parse_stream(std::istream& in);
std::vector<StreamItem> parse_stream_text(const std::string& text);
std::string write_stream(const std::vector<StreamItem>& items, const std::string& header = {});
UpdateSeq ops_of(const std::vector<StreamItem>& items);

struct Generated {
    Multigraph g;
    std::vector<StreamItem> stream;
    std::vector<std::int64_t> sizes;  // planted-cut only: true min cut after init and after each op
};

Generated gen_random_toggle(int n, int ops, std::uint64_t seed, double avg_degree = 4.0);
Generated gen_planted_cut(int n, int ops, std::uint64_t seed);
Generated gen_churn_burst(int n, int ops, std::uint64_t seed);
Generated generate(const std::string& kind, int n, int ops, std::uint64_t seed);

}  // namespace dmc
