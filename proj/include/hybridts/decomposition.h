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

#ifndef HYBRIDTS_DECOMPOSITION_H
#define HYBRIDTS_DECOMPOSITION_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybridts/tree.h"

namespace hybridts {

/// How big a subtree counts as: its height, or its largest number of branch
/// vertices on one path.
enum class SizeMeasure { kHeight, kBranching };

/// Quantum cost of exploring a subtree: sqrt(T) for quantum backtracking,
/// min(T, 2^(br/2)) for Grover over the branch choices, T for classical search.
enum class Phi { kSqrt, kGroverBranch, kClassical };

struct SubtreeInfo {
    int root = 0;
    std::int64_t size = 0;
    int height = 0;
    int branching = 0;
    /// Identical copies represented by this entry (leveled trees only).
    std::int64_t multiplicity = 1;
};

struct TreeDecomposition {
    SizeMeasure measure = SizeMeasure::kHeight;
    int budget = 0;
    std::int64_t total_size = 0;
    std::int64_t top_size = 0;
    std::vector<SubtreeInfo> cutoffs;
    /// Subtrees plus two empty trees per leaf of the top tree without a cut-off child.
    std::int64_t extended_j = 0;

    std::int64_t subtree_count() const;
    std::int64_t subtree_total() const;
    /// Subtrees with more than one vertex.
    std::int64_t nontrivial_count() const;
};

/// Cut-off vertices are those whose measure is at most `budget` while their
/// parent's exceeds it. A root within budget yields one subtree and T0 = 0.
TreeDecomposition decompose(const Tree &tree, SizeMeasure measure, int budget);

double phi_value(Phi phi, const SubtreeInfo &subtree);
double phi_of_size(Phi phi, double size);
/// T0 + sum of phi over the subtrees.
double hybrid_query_count(const TreeDecomposition &decomposition, Phi phi);

struct LeavesBound {
    bool holds = false;
    std::int64_t size = 0;
    std::int64_t leaves = 0;
    /// Vertices on the longest root-to-leaf path.
    int levels = 0;
    double lower = 0;
    double upper = 0;
};

/// (T/levels + 1)/2 <= K <= (T + 1)/2 for a tree with at most two children per vertex.
LeavesBound leaves_bound_check(const Tree &tree);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double rms_residual = 0;
};

LinearFit fit_line(const std::vector<double> &xs, const std::vector<double> &ys);

struct SeriesPoint {
    int n = 0;
    TreeDecomposition decomposition;
};

struct MetatheoremReport {
    /// log2(sum T_j / J) against n.
    LinearFit average_fit;
    /// log2 phi(sum T_j / J) against n.
    LinearFit phi_fit;
    double fitted_lambda = 0;
    double fitted_delta = 0;
    double tolerance = 0;
    bool condition_large_subtrees = false;
    bool condition_phi_speedup = false;
    /// Every vertex operation in this code base is polynomial time.
    bool condition_polytime_queries = true;
};

/// Throws std::invalid_argument for fewer than three sizes.
MetatheoremReport check_metatheorem_conditions(const std::vector<SeriesPoint> &series, Phi phi, double lambda,
                                               double delta, double tolerance = 0.05);

struct DensityScan {
    int window = 0;
    std::int64_t scanned = 0;
    double min_density = 0;
    double max_density = 0;
    double fraction_exponential = 0;
    std::int64_t branching_scanned = 0;
    double branching_min_density = 0;
    double branching_max_density = 0;
};

/// For each vertex with depth <= n - L and height >= L (L = round(eta n), n the
/// tree height) the subtree is cut L levels down and its density is
/// log2(leaves of the cut subtree) / L. The branching variant cuts after L
/// branch vertices instead. A subtree is exponential when its density reaches
/// `exponential_threshold`.
DensityScan uniform_density_scan(const Tree &tree, double eta, double exponential_threshold = 0.5);

/// Exponent of T0 + sum sqrt(T_j) for a uniformly dense tree cut at kappa' n.
double predicted_exponent(double kappa_prime, double lambda);

struct SiaRegionPoint {
    double beta = 0;
    double zeta = 0;
};

bool sia_region_holds(const SiaRegionPoint &p, double kappa, double c, double epsilon);

/// Advice fraction beta and block fraction zeta with
///   zeta log2(1/zeta) <= (1 - beta - epsilon) kappa  and  beta kappa < 2 c zeta,
/// searched on a 1e-3 grid: fix beta' = (1 - epsilon)/2, take the largest zeta
/// below 1/e meeting the first inequality, then the largest beta <= beta'
/// meeting the second. Throws std::invalid_argument on nonpositive inputs.
std::optional<SiaRegionPoint> sia_region_feasible(double kappa, double c, double epsilon);

/// n^(3/2) sqrt(T').
double tree_size_estimation_cost(double effective_size, int n);
/// Effective size where the estimation cost equals the classical cost T'.
double tree_size_estimation_crossover(int n);

/// Tree whose vertices at depth d all have arity[d] children, leaves at depth
/// arity.size(). Large members are handled level by level, never expanded.
struct LeveledTree {
    std::vector<int> arity;

    int height() const {
        return (int)arity.size();
    }
    /// Branch levels spread evenly so every window of h levels holds about lambda h of them.
    static LeveledTree uniform(int height, double lambda);
    std::vector<double> level_counts() const;
    double size() const;
    Tree expand() const;
    TreeDecomposition decompose(SizeMeasure measure, int budget) const;
};

}  // namespace hybridts

#endif
