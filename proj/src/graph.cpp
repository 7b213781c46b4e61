#include "sbf/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sbf {

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("graph: self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
        throw std::invalid_argument("graph: edge endpoint out of range");
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

void Graph::finalize() {
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    if (last != edges.end())
        throw std::invalid_argument("graph: duplicate edge");
    adjacency.assign(node_count, {});
    for (auto [u, v] : edges) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }
    for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());
}

std::vector<std::vector<uint8_t>> Graph::sensitive_rows_for(
    const std::vector<std::string>& attr_names) const {
    std::vector<int> cols;
    for (const auto& name : attr_names) {
        auto it = std::find(sensitive_names.begin(), sensitive_names.end(), name);
        if (it == sensitive_names.end())
            throw std::invalid_argument("graph: missing sensitive attribute '" + name + "'");
        cols.push_back(static_cast<int>(it - sensitive_names.begin()));
    }
    std::vector<std::vector<uint8_t>> rows(node_count);
    for (int v = 0; v < node_count; ++v) {
        rows[v].reserve(cols.size());
        for (int c : cols) rows[v].push_back(sensitive[v][c]);
    }
    return rows;
}

Graph make_graph(int node_count, const std::vector<std::pair<int, int>>& edge_list) {
    Graph g;
    g.node_count = node_count;
    for (auto [u, v] : edge_list) g.add_edge(u, v);
    g.finalize();
    return g;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.node_count)
        throw std::invalid_argument("relabel: permutation size mismatch");
    Graph out;
    out.node_count = g.node_count;
    for (auto [u, v] : g.edges) out.add_edge(perm[u], perm[v]);
    out.feature_names = g.feature_names;
    out.sensitive_names = g.sensitive_names;
    if (!g.features.empty()) out.features.resize(g.node_count);
    if (!g.sensitive.empty()) out.sensitive.resize(g.node_count);
    out.has_labels = g.has_labels;
    if (g.has_labels) out.labels.resize(g.node_count);
    for (int v = 0; v < g.node_count; ++v) {
        if (!g.features.empty()) out.features[perm[v]] = g.features[v];
        if (!g.sensitive.empty()) out.sensitive[perm[v]] = g.sensitive[v];
        if (g.has_labels) out.labels[perm[v]] = g.labels[v];
    }
    out.finalize();
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::vector<std::string> read_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

uint8_t parse_bit(const std::string& s, const std::string& what) {
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw std::invalid_argument("graph: non-binary " + what + " value '" + s + "'");
}

}  // namespace

Graph load_graph(const std::string& nodes_csv, const std::string& edges_csv) {
    auto node_lines = read_lines(nodes_csv);
    if (node_lines.empty()) throw std::invalid_argument("graph: empty nodes file");
    auto header = split_csv_line(node_lines[0]);
    if (header.empty() || header[0] != "id")
        throw std::invalid_argument("graph: nodes header must start with id");

    Graph g;
    int label_col = -1;
    std::vector<int> feature_cols, sens_cols;
    for (size_t c = 1; c < header.size(); ++c) {
        if (header[c] == "label") {
            label_col = static_cast<int>(c);
        } else if (header[c].rfind("sens:", 0) == 0) {
            sens_cols.push_back(static_cast<int>(c));
            g.sensitive_names.push_back(header[c].substr(5));
        } else {
            feature_cols.push_back(static_cast<int>(c));
            g.feature_names.push_back(header[c]);
        }
    }
    g.has_labels = label_col >= 0;

    std::unordered_map<std::string, int> id_map;
    for (size_t r = 1; r < node_lines.size(); ++r) {
        auto fields = split_csv_line(node_lines[r]);
        if (fields.size() != header.size())
            throw std::invalid_argument("graph: ragged node row " + std::to_string(r));
        if (id_map.count(fields[0]))
            throw std::invalid_argument("graph: duplicate node id '" + fields[0] + "'");
        id_map[fields[0]] = g.node_count++;
        if (g.has_labels) g.labels.push_back(parse_bit(fields[label_col], "label"));
        std::vector<double> feat;
        for (int c : feature_cols) feat.push_back(std::stod(fields[c]));
        g.features.push_back(std::move(feat));
        std::vector<uint8_t> sens;
        for (int c : sens_cols) sens.push_back(parse_bit(fields[c], "sensitive"));
        g.sensitive.push_back(std::move(sens));
    }
    if (g.node_count == 0) throw std::invalid_argument("graph: no nodes");

    auto edge_lines = read_lines(edges_csv);
    if (edge_lines.empty() || split_csv_line(edge_lines[0]) != std::vector<std::string>{"src", "dst"})
        throw std::invalid_argument("graph: edges header must be src,dst");
    for (size_t r = 1; r < edge_lines.size(); ++r) {
        auto fields = split_csv_line(edge_lines[r]);
        if (fields.size() != 2)
            throw std::invalid_argument("graph: malformed edge row " + std::to_string(r));
        auto su = id_map.find(fields[0]);
        auto sv = id_map.find(fields[1]);
        if (su == id_map.end() || sv == id_map.end())
            throw std::invalid_argument("graph: edge references unknown id in row " +
                                        std::to_string(r));
        g.add_edge(su->second, sv->second);
    }
    g.finalize();
    return g;
}

std::string serialize_nodes_csv(const Graph& g) {
    std::ostringstream out;
    out.precision(17);   // features must survive a serialize/load round trip
    out << "id";
    if (g.has_labels) out << ",label";
    for (const auto& f : g.feature_names) out << "," << f;
    for (const auto& s : g.sensitive_names) out << ",sens:" << s;
    out << "\n";
    for (int v = 0; v < g.node_count; ++v) {
        out << v;
        if (g.has_labels) out << "," << static_cast<int>(g.labels[v]);
        for (double x : g.features[v]) out << "," << x;
        for (uint8_t b : g.sensitive[v]) out << "," << static_cast<int>(b);
        out << "\n";
    }
    return out.str();
}

std::string serialize_edges_csv(const Graph& g) {
    std::ostringstream out;
    out << "src,dst\n";
    for (auto [u, v] : g.edges) out << u << "," << v << "\n";
    return out.str();
}

Graph synth_biased_graph(const SynthConfig& cfg) {
    if (cfg.nodes_per_block <= 0)
        throw std::invalid_argument("synth: nodes_per_block must be positive");
    auto check_prob = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string("synth: ") + name + " must be in [0,1]");
    };
    check_prob(cfg.p_within, "p_within");
    check_prob(cfg.p_cross, "p_cross");
    check_prob(cfg.rho_attr, "rho_attr");

    const int n = 2 * cfg.nodes_per_block;
    const int feat_dim = 4;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Graph g;
    g.node_count = n;
    g.sensitive_names = {"gender", "region", "age"};
    g.feature_names = {"f0", "f1", "f2", "f3"};
    g.has_labels = true;

    std::vector<int> block(n);
    for (int v = 0; v < n; ++v) block[v] = v < cfg.nodes_per_block ? 0 : 1;

    for (int v = 0; v < n; ++v) {
        std::vector<uint8_t> row(3);
        for (int a = 0; a < 3; ++a) {
            bool match = unit(rng) < cfg.rho_attr;
            row[a] = static_cast<uint8_t>(match ? block[v] : 1 - block[v]);
        }
        g.sensitive.push_back(std::move(row));
    }
    for (int v = 0; v < n; ++v) {
        std::vector<double> feat(feat_dim);
        double mean = block[v] == 0 ? -1.0 : 1.0;
        for (int j = 0; j < feat_dim; ++j) feat[j] = mean + gauss(rng);
        g.features.push_back(std::move(feat));
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double p = block[u] == block[v] ? cfg.p_within : cfg.p_cross;
            if (unit(rng) < p) g.add_edge(u, v);
        }
    for (int v = 0; v < n; ++v) {
        double score = 0.0;
        for (double x : g.features[v]) score += x / feat_dim;
        score += cfg.label_bias * (block[v] == 0 ? -0.5 : 0.5);
        score += 0.5 * gauss(rng);
        g.labels.push_back(score > 0.0 ? 1 : 0);
    }
    g.finalize();
    return g;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    std::vector<int> dist(g.node_count, kInfiniteDistance);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.adjacency[u])
            if (dist[w] == kInfiniteDistance) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

std::vector<int> t_hop_ball(const Graph& g, int v, int T) {
    if (v < 0 || v >= g.node_count) throw std::invalid_argument("t_hop_ball: node out of range");
    if (T < 0) throw std::invalid_argument("t_hop_ball: negative radius");
    auto dist = bfs_distances(g, v);
    std::vector<int> ball;
    for (int u = 0; u < g.node_count; ++u)
        if (dist[u] != kInfiniteDistance && dist[u] <= T) ball.push_back(u);
    return ball;
}

int pairwise_diameter(const Graph& g, const std::vector<int>& S) {
    if (S.empty()) throw std::invalid_argument("pairwise_diameter: empty set");
    int diameter = 0;
    for (size_t i = 0; i < S.size(); ++i) {
        auto dist = bfs_distances(g, S[i]);
        for (size_t j = i + 1; j < S.size(); ++j) {
            if (dist[S[j]] == kInfiniteDistance) return kInfiniteDistance;
            diameter = std::max(diameter, dist[S[j]]);
        }
    }
    return diameter;
}

}  // namespace sbf
