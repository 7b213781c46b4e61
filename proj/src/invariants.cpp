#include "sbf/invariants.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sbf/subiso.hpp"

namespace sbf {

WlResult wl1(const Graph& g) {
    const int n = g.node_count;
    std::vector<int> color(n, 0);
    int class_count = 1;
    std::ostringstream canon;

    for (int round = 1; round <= std::max(n, 1); ++round) {
        // Signature: own color plus run-length encoded sorted neighbor colors.
        std::vector<std::pair<int, std::vector<int>>> sigs(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> nbr;
            nbr.reserve(g.adjacency[v].size());
            for (int u : g.adjacency[v]) nbr.push_back(color[u]);
            std::sort(nbr.begin(), nbr.end());
            sigs[v] = {color[v], std::move(nbr)};
        }
        std::map<std::pair<int, std::vector<int>>, int> ids;
        for (const auto& s : sigs) ids.emplace(s, 0);
        int next = 0;
        for (auto& [sig, id] : ids) id = next++;

        canon << "r" << round << "{";
        for (const auto& [sig, id] : ids) {
            canon << "(" << sig.first << ":[";
            for (size_t i = 0; i < sig.second.size();) {
                size_t j = i;
                while (j < sig.second.size() && sig.second[j] == sig.second[i]) ++j;
                canon << sig.second[i] << "*" << (j - i) << ",";
                i = j;
            }
            canon << "])";
        }
        canon << "}";

        for (int v = 0; v < n; ++v) color[v] = ids.at(sigs[v]);
        int new_count = next;
        if (new_count == class_count) break;   // refinement never merges
        class_count = new_count;
    }

    WlResult result;
    std::map<int, int> sizes;
    for (int v = 0; v < n; ++v) ++sizes[color[v]];
    canon << "sizes{";
    for (auto [id, count] : sizes) {
        canon << id << "*" << count << ",";
        result.class_sizes.push_back(count);
    }
    canon << "}";
    std::sort(result.class_sizes.begin(), result.class_sizes.end());
    result.canon = canon.str();
    return result;
}

BicSummary bic(const Graph& g) {
    const int n = g.node_count;
    BicSummary summary;
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<bool> is_ap(n, false);
    std::vector<std::pair<int, int>> edge_stack;
    int timer = 0;

    // Iterative DFS; frame tracks the iterator position into the adjacency list.
    struct Frame {
        int v;
        int parent;
        size_t next_child = 0;
        int children = 0;
    };

    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack;
        stack.push_back({root, -1});
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& frame = stack.back();
            int v = frame.v;
            if (frame.next_child < g.adjacency[v].size()) {
                int u = g.adjacency[v][frame.next_child++];
                if (u == frame.parent) continue;
                if (disc[u] == -1) {
                    edge_stack.emplace_back(v, u);
                    disc[u] = low[u] = timer++;
                    ++frame.children;
                    stack.push_back({u, v});
                } else if (disc[u] < disc[v]) {
                    edge_stack.emplace_back(v, u);
                    low[v] = std::min(low[v], disc[u]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) continue;
                Frame& parent_frame = stack.back();
                int p = parent_frame.v;
                low[p] = std::min(low[p], low[v]);
                if (low[v] > disc[p]) ++summary.bridges;
                if (low[v] >= disc[p]) {
                    if (parent_frame.parent != -1 ||
                        parent_frame.children > 1)
                        is_ap[p] = true;
                    // Pop the biconnected component that ends at edge (p, v).
                    int edges = 0;
                    while (!edge_stack.empty()) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        ++edges;
                        if (a == p && b == v) break;
                    }
                    summary.component_edge_sizes.push_back(edges);
                }
            }
        }
    }
    for (bool ap : is_ap)
        if (ap) ++summary.articulation_points;
    std::sort(summary.component_edge_sizes.begin(), summary.component_edge_sizes.end());
    return summary;
}

std::vector<BigInt> pe(const Graph& g) {
    const int n = g.node_count;
    if (n > 64) throw std::invalid_argument("pe: graph too large (max 64 nodes)");

    std::vector<std::vector<BigInt>> L(n, std::vector<BigInt>(n, 0));
    for (int v = 0; v < n; ++v) L[v][v] = g.degree(v);
    for (auto [u, v] : g.edges) {
        L[u][v] = -1;
        L[v][u] = -1;
    }

    // Faddeev-LeVerrier; the division by k is exact over the integers.
    std::vector<BigInt> coeffs(n + 1, 0);
    coeffs[0] = 1;
    std::vector<std::vector<BigInt>> N(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) N[i][i] = 1;
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BigInt sum = 0;
                for (int t = 0; t < n; ++t) sum += L[i][t] * N[t][j];
                M[i][j] = sum;
            }
        BigInt trace = 0;
        for (int i = 0; i < n; ++i) trace += M[i][i];
        coeffs[k] = -trace / k;
        N = M;
        for (int i = 0; i < n; ++i) N[i][i] += coeffs[k];
    }
    return coeffs;
}

uint64_t hom_count(const Graph& pattern, const Graph& g) {
    if (pattern.node_count > 5)
        throw std::invalid_argument("hom_count: pattern must have at most 5 nodes");
    const int k = pattern.node_count;
    std::vector<int> image(k, -1);
    uint64_t count = 0;
    std::function<void(int)> assign = [&](int p) {
        if (p == k) {
            ++count;
            return;
        }
        for (int v = 0; v < g.node_count; ++v) {
            bool ok = true;
            for (int q = 0; q < p && ok; ++q) {
                bool pattern_edge =
                    std::binary_search(pattern.adjacency[p].begin(),
                                       pattern.adjacency[p].end(), q);
                if (pattern_edge &&
                    !std::binary_search(g.adjacency[v].begin(), g.adjacency[v].end(),
                                        image[q]))
                    ok = false;
            }
            if (!ok) continue;
            image[p] = v;
            assign(p + 1);
            image[p] = -1;
        }
    };
    assign(0);
    return count;
}

SubsetProperty subset_property_from_name(const std::string& name) {
    if (name == "adjacency") return SubsetProperty::Adjacency;
    if (name == "clique") return SubsetProperty::Clique;
    if (name == "connected") return SubsetProperty::Connected;
    throw std::invalid_argument("unknown subset property '" + name + "'");
}

std::string subset_property_name(SubsetProperty p) {
    switch (p) {
        case SubsetProperty::Adjacency: return "adjacency";
        case SubsetProperty::Clique: return "clique";
        case SubsetProperty::Connected: return "connected";
    }
    return "?";
}

namespace {

bool subset_is_clique(const Graph& g, uint32_t mask) {
    for (int u = 0; u < g.node_count; ++u) {
        if (!((mask >> u) & 1)) continue;
        for (int v = u + 1; v < g.node_count; ++v) {
            if (!((mask >> v) & 1)) continue;
            if (!std::binary_search(g.adjacency[u].begin(), g.adjacency[u].end(), v))
                return false;
        }
    }
    return true;
}

bool subset_is_connected(const Graph& g, uint32_t mask) {
    if (mask == 0) return true;
    int start = std::countr_zero(mask);
    uint32_t seen = uint32_t{1} << start;
    std::vector<int> frontier{start};
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        for (int u : g.adjacency[v]) {
            uint32_t bit = uint32_t{1} << u;
            if ((mask & bit) && !(seen & bit)) {
                seen |= bit;
                frontier.push_back(u);
            }
        }
    }
    return seen == mask;
}

}  // namespace

TruthTable sbi_table(const Graph& g, SubsetProperty property) {
    if (g.node_count > TruthTable::kMaxVars)
        throw std::invalid_argument("sbi_table: too many nodes");
    TruthTable t(g.node_count);
    for (uint32_t mask = 0; mask < t.size(); ++mask) {
        int bit = 0;
        switch (property) {
            case SubsetProperty::Adjacency:
                bit = std::popcount(mask) == 2 &&
                      subset_is_clique(g, mask) ? 1 : 0;
                break;
            case SubsetProperty::Clique:
                bit = subset_is_clique(g, mask) ? 1 : 0;
                break;
            case SubsetProperty::Connected:
                bit = subset_is_connected(g, mask) ? 1 : 0;
                break;
        }
        t.set(mask, bit);
    }
    return t;
}

namespace {

constexpr int kGiNodeLimit = 10;

struct CanonSearch {
    const Graph& g;
    int n;
    std::vector<uint8_t> best;
    bool have_best = false;
    uint64_t best_gen = 0;       // bumped whenever best is replaced
    bool prefix_less = false;    // current path strictly below best's prefix
    std::vector<int> placed;
    std::vector<bool> used;
    std::vector<uint8_t> current;

    explicit CanonSearch(const Graph& graph)
        : g(graph), n(graph.node_count), used(graph.node_count, false) {}

    void search() {
        int k = static_cast<int>(placed.size());
        if (k == n) {
            if (!have_best || prefix_less) {
                best = current;
                have_best = true;
                ++best_gen;
                // the live path is now exactly best's prefix at every level
                prefix_less = false;
            }
            return;
        }
        size_t offset = current.size();
        for (int c = 0; c < n; ++c) {
            if (used[c]) continue;
            bool saved_less = prefix_less;
            uint64_t saved_gen = best_gen;
            bool prune = false;
            for (int j = 0; j < k; ++j) {
                uint8_t bit = std::binary_search(g.adjacency[c].begin(),
                                                 g.adjacency[c].end(), placed[j])
                                  ? 1
                                  : 0;
                current.push_back(bit);
                if (have_best && !prefix_less) {
                    uint8_t ref = best[offset + j];
                    if (bit > ref) {
                        prune = true;
                        break;
                    }
                    if (bit < ref) prefix_less = true;
                }
            }
            if (!prune) {
                used[c] = true;
                placed.push_back(c);
                search();
                placed.pop_back();
                used[c] = false;
            }
            current.resize(offset);
            // If best was rebased inside the subtree, our remaining prefix
            // matches the new best exactly; otherwise restore the old state.
            prefix_less = best_gen != saved_gen ? false : saved_less;
        }
    }
};

}  // namespace

std::string gi_canonical(const Graph& g) {
    if (g.node_count > kGiNodeLimit)
        throw std::invalid_argument("gi_canonical: graph too large (max 10 nodes)");
    CanonSearch search(g);
    search.search();
    std::string out;
    out.reserve(search.best.size());
    for (uint8_t bit : search.best) out += static_cast<char>('0' + bit);
    return out;
}

std::vector<Graph> default_hom_family() {
    return {make_graph(1, {}), make_graph(2, {{0, 1}}),
            make_graph(3, {{0, 1}, {1, 2}, {0, 2}})};
}

InvariantSummary invariant_summary(const Graph& g, const std::vector<Graph>& hom_family,
                                   SubsetProperty sbi_property) {
    InvariantSummary s;
    s.wl = wl1(g);
    s.bic = bic(g);
    s.pe = pe(g);
    for (const auto& pattern : hom_family) s.hom.push_back(hom_count(pattern, g));
    s.sbi = sbi_table(g, sbi_property);
    if (g.node_count <= kGiNodeLimit) s.gi = gi_canonical(g);
    return s;
}

std::vector<PairVerdict> hierarchy_pair(const Graph& g1, const Graph& g2,
                                        const std::vector<Graph>& hom_family,
                                        SubsetProperty sbi_property) {
    std::vector<PairVerdict> rows;
    bool same_n = g1.node_count == g2.node_count;

    rows.push_back({"wl1", wl1(g1) != wl1(g2), false});
    rows.push_back({"bic", !(bic(g1) == bic(g2)), false});
    rows.push_back({"pe", pe(g1) != pe(g2), false});

    std::vector<uint64_t> hom1, hom2;
    for (const auto& pattern : hom_family) {
        hom1.push_back(hom_count(pattern, g1));
        hom2.push_back(hom_count(pattern, g2));
    }
    rows.push_back({"hom", hom1 != hom2, false});

    {
        PairVerdict row{"sbi", false, false};
        if (!same_n) {
            row.distinguishes = true;
        } else if (g1.node_count > TruthTable::kMaxVars) {
            row.skipped = true;
        } else {
            row.distinguishes =
                !subiso(sbi_table(g1, sbi_property), sbi_table(g2, sbi_property))
                     .has_value();
        }
        rows.push_back(row);
    }
    {
        PairVerdict row{"gi", false, false};
        if (!same_n) {
            row.distinguishes = true;
        } else if (g1.node_count > kGiNodeLimit) {
            row.skipped = true;
        } else {
            row.distinguishes = gi_canonical(g1) != gi_canonical(g2);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string hierarchy_report(const std::vector<std::pair<Graph, Graph>>& pairs,
                             const std::vector<Graph>& hom_family,
                             SubsetProperty sbi_property) {
    std::ostringstream out;
    out << "pair_id,invariant,verdict\n";
    for (size_t p = 0; p < pairs.size(); ++p) {
        auto rows = hierarchy_pair(pairs[p].first, pairs[p].second, hom_family, sbi_property);
        for (const auto& row : rows) {
            const char* verdict = row.skipped ? "skipped"
                                  : row.distinguishes ? "distinguishes"
                                                      : "agrees";
            out << p << "," << row.invariant << "," << verdict << "\n";
        }
    }
    return out.str();
}

}  // namespace sbf
