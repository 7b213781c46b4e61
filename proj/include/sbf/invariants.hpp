#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sbf/graph.hpp"
#include "sbf/truth_table.hpp"

namespace sbf {

using BigInt = boost::multiprecision::cpp_int;

// Stable 1-WL refinement summary. canon encodes the per-round signature
// dictionaries plus final class sizes, so two results compare equal exactly
// when the graphs are 1-WL equivalent.
struct WlResult {
    std::string canon;
    std::vector<int> class_sizes;   // sorted

    bool operator==(const WlResult& other) const { return canon == other.canon; }
    bool operator!=(const WlResult& other) const { return !(*this == other); }
};

WlResult wl1(const Graph& g);

struct BicSummary {
    int articulation_points = 0;
    int bridges = 0;
    std::vector<int> component_edge_sizes;   // sorted multiset

    bool operator==(const BicSummary& other) const = default;
};

BicSummary bic(const Graph& g);

// Characteristic polynomial of the Laplacian L = D - A, exact integer
// coefficients [1, c_{n-1}, ..., c_0] (leading first). n <= 64.
std::vector<BigInt> pe(const Graph& g);

// Edge-preserving (not necessarily injective) maps pattern -> g.
// Pattern must have at most 5 nodes.
uint64_t hom_count(const Graph& pattern, const Graph& g);

enum class SubsetProperty { Adjacency, Clique, Connected };

SubsetProperty subset_property_from_name(const std::string& name);
std::string subset_property_name(SubsetProperty p);

// Full truth table over node subsets (bit v of the index marks node v).
// Clique counts the empty set and singletons as cliques; Connected treats
// them as connected.
TruthTable sbi_table(const Graph& g, SubsetProperty property);

// Lexicographically minimal adjacency encoding over all node orderings,
// via branch-and-bound. n <= 10.
std::string gi_canonical(const Graph& g);

struct InvariantSummary {
    WlResult wl;
    BicSummary bic;
    std::vector<BigInt> pe;
    std::vector<uint64_t> hom;             // one count per family pattern
    TruthTable sbi;
    std::optional<std::string> gi;         // absent when n exceeds the limit

    InvariantSummary() : sbi(1) {}
};

// Default homomorphism pattern family {K1, K2, K3}.
std::vector<Graph> default_hom_family();

InvariantSummary invariant_summary(const Graph& g,
                                   const std::vector<Graph>& hom_family,
                                   SubsetProperty sbi_property = SubsetProperty::Adjacency);

struct PairVerdict {
    std::string invariant;
    bool distinguishes = false;
    bool skipped = false;   // per-invariant limit exceeded
};

// One verdict row per invariant. The SBI verdict compares the subset
// tables up to node relabeling (via subiso), matching the invariant's
// isomorphism-class semantics.
std::vector<PairVerdict> hierarchy_pair(const Graph& g1, const Graph& g2,
                                        const std::vector<Graph>& hom_family,
                                        SubsetProperty sbi_property = SubsetProperty::Adjacency);

// CSV rows: pair_id,invariant,verdict
std::string hierarchy_report(const std::vector<std::pair<Graph, Graph>>& pairs,
                             const std::vector<Graph>& hom_family,
                             SubsetProperty sbi_property = SubsetProperty::Adjacency);

}  // namespace sbf
