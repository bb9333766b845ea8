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

#include "hybridts/decomposition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybridts {

std::int64_t TreeDecomposition::subtree_count() const {
    std::int64_t j = 0;
    for (const auto &c : cutoffs) {
        j += c.multiplicity;
    }
    return j;
}

std::int64_t TreeDecomposition::subtree_total() const {
    std::int64_t t = 0;
    for (const auto &c : cutoffs) {
        t += c.size * c.multiplicity;
    }
    return t;
}

std::int64_t TreeDecomposition::nontrivial_count() const {
    std::int64_t j = 0;
    for (const auto &c : cutoffs) {
        j += c.size > 1 ? c.multiplicity : 0;
    }
    return j;
}

TreeDecomposition decompose(const Tree &tree, SizeMeasure measure, int budget) {
    if (tree.size() == 0) {
        throw std::invalid_argument("empty tree");
    }
    std::vector<int> m = measure == SizeMeasure::kHeight ? tree.heights() : tree.branchings();
    std::vector<int> h = tree.heights();
    std::vector<int> br = tree.branchings();
    std::vector<int> sizes = tree.subtree_sizes();
    TreeDecomposition out;
    out.measure = measure;
    out.budget = budget;
    out.total_size = tree.size();
    std::int64_t bare_top_leaves = 0;
    for (int v = 0; v < tree.size(); v++) {
        int p = tree.parent[v];
        if (p >= 0 && m[v] > m[p]) {
            throw std::logic_error("measure grows along a root-to-leaf path");
        }
        if (m[v] > budget) {
            out.top_size++;
            bool has_cutoff_child = false;
            bool has_top_child = false;
            for (int c : tree.children[v]) {
                (m[c] > budget ? has_top_child : has_cutoff_child) = true;
            }
            bare_top_leaves += !has_top_child && !has_cutoff_child;
        } else if (p < 0 || m[p] > budget) {
            out.cutoffs.push_back({v, sizes[v], h[v], br[v], 1});
        }
    }
    out.extended_j = out.subtree_count() + 2 * bare_top_leaves;
    return out;
}

double phi_of_size(Phi phi, double size) {
    switch (phi) {
        case Phi::kSqrt:
            return std::sqrt(size);
        case Phi::kClassical:
            return size;
        case Phi::kGroverBranch:
            break;
    }
    throw std::invalid_argument("branch-count cost needs the subtree's branching number");
}

double phi_value(Phi phi, const SubtreeInfo &subtree) {
    if (phi == Phi::kGroverBranch) {
        return std::min((double)subtree.size, std::pow(2.0, subtree.branching / 2.0));
    }
    return phi_of_size(phi, (double)subtree.size);
}

double hybrid_query_count(const TreeDecomposition &decomposition, Phi phi) {
    double total = (double)decomposition.top_size;
    for (const auto &c : decomposition.cutoffs) {
        total += (double)c.multiplicity * phi_value(phi, c);
    }
    return total;
}

LeavesBound leaves_bound_check(const Tree &tree) {
    LeavesBound out;
    out.size = tree.size();
    out.leaves = tree.leaf_count();
    out.levels = tree.height() + 1;
    out.lower = ((double)out.size / out.levels + 1) / 2;
    out.upper = ((double)out.size + 1) / 2;
    out.holds = out.lower <= (double)out.leaves + 1e-12 && (double)out.leaves <= out.upper + 1e-12;
    return out;
}

LinearFit fit_line(const std::vector<double> &xs, const std::vector<double> &ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("line fit needs at least two points");
    }
    double n = (double)xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < xs.size(); k++) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) {
        throw std::invalid_argument("line fit needs two distinct abscissae");
    }
    LinearFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (size_t k = 0; k < xs.size(); k++) {
        double r = ys[k] - (f.slope * xs[k] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

MetatheoremReport check_metatheorem_conditions(const std::vector<SeriesPoint> &series, Phi phi, double lambda,
                                               double delta, double tolerance) {
    if (series.size() < 3) {
        throw std::invalid_argument("metatheorem check needs at least three sizes");
    }
    std::vector<double> xs, avg, qavg;
    for (const auto &p : series) {
        const auto &d = p.decomposition;
        if (d.extended_j == 0) {
            throw std::invalid_argument("decomposition without subtrees");
        }
        double a = (double)d.subtree_total() / (double)d.extended_j;
        xs.push_back(p.n);
        avg.push_back(std::log2(a));
        if (phi == Phi::kGroverBranch) {
            double q = 0;
            for (const auto &c : d.cutoffs) {
                q += (double)c.multiplicity * phi_value(phi, c);
            }
            qavg.push_back(std::log2(std::max(q / (double)d.extended_j, 1.0)));
        } else {
            qavg.push_back(std::log2(phi_of_size(phi, a)));
        }
    }
    MetatheoremReport r;
    r.tolerance = tolerance;
    r.average_fit = fit_line(xs, avg);
    r.phi_fit = fit_line(xs, qavg);
    r.fitted_lambda = r.average_fit.slope;
    r.fitted_delta = r.fitted_lambda > 0 ? 1 - r.phi_fit.slope / r.fitted_lambda : 0;
    r.condition_large_subtrees = r.fitted_lambda > tolerance && r.fitted_lambda >= lambda - tolerance;
    r.condition_phi_speedup = r.condition_large_subtrees && r.fitted_delta > tolerance &&
                              r.phi_fit.slope <= lambda * (1 - delta) + tolerance;
    return r;
}

namespace {

// Leaves of the subtree of v cut where `cost` (levels or branch vertices) reaches L.
std::int64_t cut_leaves(const Tree &tree, int v, int window, bool by_branching) {
    std::int64_t leaves = 0;
    std::vector<std::pair<int, int>> stack{{v, 0}};
    while (!stack.empty()) {
        auto [u, used] = stack.back();
        stack.pop_back();
        const auto &kids = tree.children[u];
        int step = by_branching ? (kids.size() == 2 ? 1 : 0) : 1;
        if (kids.empty() || used == window || (by_branching && used + step > window)) {
            leaves++;
            continue;
        }
        for (int c : kids) {
            stack.push_back({c, used + step});
        }
    }
    return leaves;
}

}  // namespace

DensityScan uniform_density_scan(const Tree &tree, double eta, double exponential_threshold) {
    if (!(eta > 0 && eta <= 1)) {
        throw std::invalid_argument("eta must lie in (0, 1]");
    }
    DensityScan out;
    int n = tree.height();
    int window = std::max(1, (int)std::lround(eta * n));
    out.window = window;
    std::vector<int> depth = tree.depths();
    std::vector<int> height = tree.heights();
    std::vector<int> br = tree.branchings();
    out.min_density = out.branching_min_density = std::numeric_limits<double>::infinity();
    std::int64_t exponential = 0;
    for (int v = 0; v < tree.size(); v++) {
        if (depth[v] <= n - window && height[v] >= window) {
            double d = std::log2((double)cut_leaves(tree, v, window, false)) / window;
            out.scanned++;
            out.min_density = std::min(out.min_density, d);
            out.max_density = std::max(out.max_density, d);
            exponential += d >= exponential_threshold;
        }
        if (br[v] >= window) {
            double d = std::log2((double)cut_leaves(tree, v, window, true)) / window;
            out.branching_scanned++;
            out.branching_min_density = std::min(out.branching_min_density, d);
            out.branching_max_density = std::max(out.branching_max_density, d);
        }
    }
    if (out.scanned == 0) {
        out.min_density = 0;
    } else {
        out.fraction_exponential = (double)exponential / (double)out.scanned;
    }
    if (out.branching_scanned == 0) {
        out.branching_min_density = 0;
    }
    return out;
}

double predicted_exponent(double kappa_prime, double lambda) {
    if (kappa_prime < 0 || kappa_prime > 1 || lambda <= 0) {
        throw std::invalid_argument("need 0 <= kappa' <= 1 and lambda > 0");
    }
    return (1 - kappa_prime / 2) * lambda;
}

bool sia_region_holds(const SiaRegionPoint &p, double kappa, double c, double epsilon) {
    if (!(p.zeta > 0 && p.zeta < 1 && p.beta > 0)) {
        return false;
    }
    bool first = std::log2(1 / p.zeta) * p.zeta <= (1 - p.beta - epsilon) * kappa;
    bool second = p.beta * kappa < 2 * c * p.zeta;
    return first && second;
}

std::optional<SiaRegionPoint> sia_region_feasible(double kappa, double c, double epsilon) {
    if (!(kappa > 0 && c > 0 && epsilon > 0)) {
        throw std::invalid_argument("kappa, c and epsilon must be positive");
    }
    constexpr int kSteps = 1000;
    int beta_start = (int)std::floor((1 - epsilon) / 2 * kSteps);
    if (beta_start < 1) {
        return std::nullopt;
    }
    double beta_fixed = (double)beta_start / kSteps;
    double rhs = (1 - beta_fixed - epsilon) * kappa;
    int zeta_start = (int)std::floor(kSteps / std::exp(1.0));
    for (int z = zeta_start; z >= 1; z--) {
        double zeta = (double)z / kSteps;
        if (std::log2(1 / zeta) * zeta > rhs) {
            continue;
        }
        for (int b = beta_start; b >= 1; b--) {
            SiaRegionPoint p{(double)b / kSteps, zeta};
            if (sia_region_holds(p, kappa, c, epsilon)) {
                return p;
            }
        }
        return std::nullopt;
    }
    return std::nullopt;
}

double tree_size_estimation_cost(double effective_size, int n) {
    if (effective_size < 1) {
        throw std::invalid_argument("effective size must be at least 1");
    }
    return std::pow((double)n, 1.5) * std::sqrt(effective_size);
}

double tree_size_estimation_crossover(int n) {
    return std::pow((double)n, 3.0);
}

LeveledTree LeveledTree::uniform(int height, double lambda) {
    if (!(lambda > 0 && lambda <= 1)) {
        throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    LeveledTree t;
    for (int d = 0; d < height; d++) {
        bool branch = std::floor(lambda * (d + 1) + 1e-9) > std::floor(lambda * d + 1e-9);
        t.arity.push_back(branch ? 2 : 1);
    }
    return t;
}

std::vector<double> LeveledTree::level_counts() const {
    std::vector<double> counts{1.0};
    for (int a : arity) {
        counts.push_back(counts.back() * a);
    }
    return counts;
}

double LeveledTree::size() const {
    double s = 0;
    for (double c : level_counts()) {
        s += c;
    }
    return s;
}

Tree LeveledTree::expand() const {
    Tree t;
    auto grow = [&](auto &&self, int par, int depth) -> void {
        int v = t.add(par);
        if (depth < height()) {
            for (int k = 0; k < arity[depth]; k++) {
                self(self, v, depth + 1);
            }
        }
    };
    grow(grow, -1, 0);
    return t;
}

TreeDecomposition LeveledTree::decompose(SizeMeasure measure, int budget) const {
    int h = height();
    std::vector<double> counts = level_counts();
    std::vector<int> br(h + 1, 0);
    for (int d = h - 1; d >= 0; d--) {
        br[d] = br[d + 1] + (arity[d] == 2);
    }
    auto m = [&](int d) {
        return measure == SizeMeasure::kHeight ? h - d : br[d];
    };
    int cut = 0;
    while (m(cut) > budget) {
        cut++;
    }
    TreeDecomposition out;
    out.measure = measure;
    out.budget = budget;
    out.total_size = (std::int64_t)std::llround(size());
    for (int d = 0; d < cut; d++) {
        out.top_size += (std::int64_t)std::llround(counts[d]);
    }
    SubtreeInfo sub;
    sub.root = -1;
    double below = 0;
    for (int d = cut; d <= h; d++) {
        below += counts[d];
    }
    sub.size = (std::int64_t)std::llround(below / counts[cut]);
    sub.height = h - cut;
    sub.branching = br[cut];
    sub.multiplicity = (std::int64_t)std::llround(counts[cut]);
    out.cutoffs.push_back(sub);
    out.extended_j = sub.multiplicity;
    return out;
}

}  // namespace hybridts
