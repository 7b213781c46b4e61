#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sbf {

// Undirected simple graph with optional node features, binary sensitive
// attributes, and optional binary labels.
struct Graph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;        // u < v, unique
    std::vector<std::vector<int>> adjacency;       // sorted neighbor lists
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> features;     // node_count rows of dim d
    std::vector<std::string> sensitive_names;
    std::vector<std::vector<uint8_t>> sensitive;   // node_count bit rows
    bool has_labels = false;
    std::vector<uint8_t> labels;

    int feature_dim() const {
        return static_cast<int>(feature_names.size());
    }
    int degree(int v) const { return static_cast<int>(adjacency[v].size()); }

    void add_edge(int u, int v);
    void finalize();   // rebuild adjacency from the edge list

    // Sensitive rows reordered to match the given circuit input names.
    std::vector<std::vector<uint8_t>> sensitive_rows_for(
        const std::vector<std::string>& attr_names) const;
};

Graph make_graph(int node_count, const std::vector<std::pair<int, int>>& edges);

// Relabeled copy: node v becomes perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);

struct SynthConfig {
    int nodes_per_block = 200;
    double p_within = 0.05;
    double p_cross = 0.01;
    double rho_attr = 0.9;      // P(attribute bit == block id)
    double label_bias = 2.0;    // group bias beta in the threshold rule
    uint64_t seed = 7;
};

// nodes CSV header: id[,label][,<feature cols>][,sens:<name> cols]
// edges CSV header: src,dst
Graph load_graph(const std::string& nodes_csv, const std::string& edges_csv);

std::string serialize_nodes_csv(const Graph& g);
std::string serialize_edges_csv(const Graph& g);

// Two-block stochastic block model with attribute/block correlation and a
// biased linear-threshold label rule; deterministic per seed.
Graph synth_biased_graph(const SynthConfig& cfg);

std::vector<int> t_hop_ball(const Graph& g, int v, int T);

constexpr int kInfiniteDistance = -1;

// Max pairwise BFS distance inside S; kInfiniteDistance when S spans
// multiple components.
int pairwise_diameter(const Graph& g, const std::vector<int>& S);

std::vector<int> bfs_distances(const Graph& g, int source);

}  // namespace sbf
