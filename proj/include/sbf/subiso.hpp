#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sbf/graph.hpp"
#include "sbf/truth_table.hpp"

namespace sbf {

// Bijection on variable positions {1..n}, stored 0-based: mapping[i] is
// pi(i+1)-1. Acting on a table: (pi.f)(x) = f(pi(x)) where coordinate i of
// pi(x) is x_{pi(i)}.
struct VarPermutation {
    int n = 0;
    std::vector<int> mapping;

    static VarPermutation identity(int n);
    VarPermutation inverse() const;
    void validate() const;
};

TruthTable apply_perm(const TruthTable& f, const VarPermutation& pi);

// Thrown when the backtracking search exhausts its node budget; distinct
// from a non-isomorphic verdict.
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("subiso: search budget exceeded") {}
};

struct SubIsoOptions {
    uint64_t budget = 5'000'000;   // backtracking nodes visited
};

// Witness pi with f = pi.g (i.e. f(x) = g(pi(x)) for all x), or nullopt.
// Candidates are pruned by per-weight one counts, the influence multiset,
// and Fourier degree before backtracking over influence-compatible
// variable assignments.
std::optional<VarPermutation> subiso(const TruthTable& f, const TruthTable& g,
                                     const SubIsoOptions& opts = {});

// Weight-2 edge encoding: table is 1 exactly on masks {u,v} in E.
TruthTable encode_graph(const Graph& g);

struct ReductionCheck {
    bool gi_isomorphic = false;
    bool subiso_isomorphic = false;
    bool agree = false;
    std::optional<VarPermutation> witness;
};

ReductionCheck reduction_check(const Graph& g1, const Graph& g2);

}  // namespace sbf
