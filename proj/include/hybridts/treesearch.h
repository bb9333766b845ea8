// Copyright 2026 The hybridts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBRIDTS_TREESEARCH_H
#define HYBRIDTS_TREESEARCH_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hybridts/formula.h"
#include "hybridts/tree.h"

namespace hybridts {

enum class EngineKind { kDpll, kDncPpsz };
enum class ReductionRule { kUnit, kPureLiteral, kSImplication };

/// Asymptotic guess fraction for 3-CNF.
constexpr double kGamma3 = 0.38;

struct EngineConfig {
    EngineKind kind = EngineKind::kDpll;
    std::vector<ReductionRule> rules{ReductionRule::kUnit, ReductionRule::kPureLiteral};
    int s = 1;
    /// Variable order (1-based). Empty means 1..n.
    std::vector<int> permutation;
    /// Guesses allowed on any path; only read by kDncPpsz.
    int guess_budget = 0;
    std::uint64_t rng_seed = 0;

    /// Throws std::invalid_argument if the order is not a bijection on 1..n
    /// or the budget exceeds n.
    void validate(int num_vars) const;
    std::vector<int> order(int num_vars) const;

    static EngineConfig dpll();
    static EngineConfig dnc_ppsz(int guess_budget, int s, std::vector<int> permutation = {});
};

struct TreeNode {
    PartialAssignment assignment;
    int depth = 0;
    int guess_count = 0;

    static TreeNode root(int num_vars) {
        return {PartialAssignment(num_vars), 0, 0};
    }
};

enum class ChildCount { kZeroLeaf, kOneChild, kTwoChildren };
enum class LeafKind { kNone, kSatisfied, kContradiction, kOutOfGuesses };

/// What the engine does at a node: the child count, the leaf reason, and the
/// variable it assigns next (with the forced value for one-child nodes).
struct NodeStep {
    ChildCount count = ChildCount::kZeroLeaf;
    LeafKind leaf = LeafKind::kNone;
    int var = 0;
    bool value = false;
};

NodeStep decide(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config);
ChildCount ch_no(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config);
/// Throws std::logic_error unless ch_no is kOneChild.
TreeNode ch1(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config);
/// Throws std::logic_error unless ch_no is kTwoChildren.
TreeNode ch2(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config, bool b);

struct SearchTreeStats {
    std::int64_t size = 0;
    std::int64_t height = 0;
    std::int64_t max_branching = 0;
    std::int64_t leaf_count = 0;
    std::int64_t sat_leaves = 0;
    /// Vertices visited by depth-first search up to and including the first
    /// satisfied leaf; equals size when there is none.
    std::int64_t effective_size = 0;

    bool operator==(const SearchTreeStats &other) const = default;
};

enum class SolveVerdict { kSat, kUnsat, kNotFound };
std::string verdict_name(SolveVerdict v);

struct SolveResult {
    SolveVerdict verdict = SolveVerdict::kUnsat;
    /// Full satisfying assignment when kSat (variables left open are set true).
    std::vector<bool> assignment;
    /// Statistics of the part of the tree actually traversed.
    SearchTreeStats stats;
};

/// Depth-first DPLL, 0-branch first, stopping at the first solution.
SolveResult dpll_solve(const CnfFormula &formula, const EngineConfig &config = EngineConfig::dpll());

/// Truncated PPSZ tree for one permutation. kNotFound is a one-sided verdict.
SolveResult dnc_ppsz_solve(const CnfFormula &formula, const EngineConfig &config);

struct PpszResult {
    SolveVerdict verdict = SolveVerdict::kNotFound;
    std::vector<bool> assignment;
    int rounds_used = 0;
    int guess_budget = 0;
    std::vector<SearchTreeStats> per_round;
};

/// Budget min(n, ceil((gamma + epsilon) n)); fresh uniform permutation each round.
PpszResult ppsz_proper(const CnfFormula &formula, int s, double epsilon, int max_rounds, std::uint64_t seed,
                       double gamma = kGamma3);

/// Fully expanded search tree. Per-vertex arrays are indexed like `shape`.
struct SearchTree {
    Tree shape;
    std::vector<TreeNode> nodes;
    std::vector<NodeStep> steps;
    SearchTreeStats stats;
};

/// Throws std::length_error past max_vertices.
SearchTree build_search_tree(const CnfFormula &formula, const EngineConfig &config,
                             std::int64_t max_vertices = 1 << 22);
SearchTreeStats tree_stats(const CnfFormula &formula, const EngineConfig &config);
SearchTreeStats stats_of(const Tree &tree);

struct GuessBoundReport {
    std::vector<int> min_guesses;
    int threshold = 0;
    double fraction_exceeding = 0;
};

/// Minimum guesses over root-to-solution paths of the untruncated PPSZ tree,
/// one entry per sampled permutation. Throws std::invalid_argument if unsatisfiable.
GuessBoundReport estimate_permutation_guess_bound(const CnfFormula &formula, int samples, std::uint64_t seed, int s,
                                                  int threshold);

std::vector<int> random_permutation(int n, std::mt19937_64 &rng);

}  // namespace hybridts

#endif
