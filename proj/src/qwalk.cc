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

#include "hybridts/qwalk.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hybridts/caps.h"

namespace hybridts {

WalkTree WalkTree::from_tree(Tree tree, int depth_bound) {
    if (tree.size() == 0) {
        throw std::invalid_argument("empty tree");
    }
    if (tree.marked[0]) {
        throw std::invalid_argument("the root must not be marked");
    }
    if (depth_bound < std::max(1, tree.height())) {
        throw std::invalid_argument("depth bound below the tree height");
    }
    return {std::move(tree), depth_bound};
}

WalkTree WalkTree::from_search_tree(const SearchTree &search, int num_vars) {
    Tree t = search.shape;
    for (int v = 0; v < t.size(); v++) {
        t.marked[v] = search.steps[v].leaf == LeafKind::kSatisfied;
    }
    return from_tree(std::move(t), std::max(1, num_vars));
}

Diffusion build_diffusion(const WalkTree &walk, int vertex) {
    const Tree &t = walk.tree;
    if (vertex < 0 || vertex >= t.size()) {
        throw std::out_of_range("vertex not in tree");
    }
    Diffusion d;
    d.vertex = vertex;
    d.support.push_back(vertex);
    for (int c : t.children[vertex]) {
        d.support.push_back(c);
    }
    if (t.marked[vertex]) {
        d.identity = true;
        return d;
    }
    double child_weight = vertex == 0 ? std::sqrt((double)walk.depth_bound) : 1.0;
    double norm = std::sqrt(1 + child_weight * child_weight * (double)t.children[vertex].size());
    d.psi.push_back(1 / norm);
    for (std::size_t k = 0; k < t.children[vertex].size(); k++) {
        d.psi.push_back(child_weight / norm);
    }
    return d;
}

double WalkOperator::unitarity_residual() const {
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dimension, dimension);
    return std::max((ra.transpose() * ra - id).cwiseAbs().maxCoeff(), (rb.transpose() * rb - id).cwiseAbs().maxCoeff());
}

WalkOperator build_walk_operator(const WalkTree &walk) {
    int size = walk.tree.size();
    std::int64_t cap = dimension_cap(kDefaultWalkDimensionCap);
    if (size > cap) {
        throw std::length_error("walk dimension " + std::to_string(size) + " exceeds the cap of " +
                                std::to_string(cap));
    }
    WalkOperator op;
    op.dimension = size;
    op.ra = Eigen::MatrixXd::Identity(size, size);
    op.rb = Eigen::MatrixXd::Identity(size, size);
    auto depth = walk.tree.depths();
    for (int x = 0; x < size; x++) {
        Diffusion d = build_diffusion(walk, x);
        if (d.identity) {
            continue;
        }
        Eigen::MatrixXd &r = depth[x] % 2 == 0 ? op.ra : op.rb;
        for (std::size_t i = 0; i < d.support.size(); i++) {
            for (std::size_t j = 0; j < d.support.size(); j++) {
                r(d.support[i], d.support[j]) -= 2 * d.psi[i] * d.psi[j];
            }
        }
    }
    return op;
}

WalkSpectrum walk_spectrum(const WalkOperator &op) {
    Eigen::MatrixXd w = op.walk();
    Eigen::MatrixXd sym = (w + w.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver failed");
    }
    // On each invariant plane the walk is cos(phi) I + sin(phi) J, so the
    // antisymmetric part recovers sin(phi) without the ill-conditioned acos.
    Eigen::MatrixXd turned = ((w - w.transpose()) / 2) * solver.eigenvectors();
    WalkSpectrum s;
    s.dimension = op.dimension;
    for (Eigen::Index k = 0; k < sym.rows(); k++) {
        double c = std::clamp(solver.eigenvalues()[k], -1.0, 1.0);
        double overlap = solver.eigenvectors()(0, k);
        s.phases.push_back(std::atan2(turned.col(k).norm(), c));
        s.root_weight.push_back(overlap * overlap);
    }
    return s;
}

double phase_mass_at_zero(const WalkSpectrum &spectrum, double precision) {
    double mass = 0;
    for (std::size_t k = 0; k < spectrum.phases.size(); k++) {
        if (spectrum.phases[k] < precision) {
            mass += spectrum.root_weight[k];
        }
    }
    return mass;
}

double phase_mass_at_zero(const WalkOperator &op, double precision) {
    return phase_mass_at_zero(walk_spectrum(op), precision);
}

double exact_zero_mass(const WalkSpectrum &spectrum) {
    return phase_mass_at_zero(spectrum, 1e-9);
}

double qpe_zero_probability(const WalkSpectrum &spectrum, int t) {
    double total = 0;
    for (std::size_t k = 0; k < spectrum.phases.size(); k++) {
        double p = spectrum.root_weight[k];
        for (int j = 0; j < t; j++) {
            double c = std::cos(std::ldexp(spectrum.phases[k], j - 1));
            p *= c * c;
        }
        total += p;
    }
    return total;
}

DetectionConfig default_detection_config() {
    return DetectionConfig{};
}

int detection_repetitions(double delta, const DetectionConfig &config) {
    if (!(delta > 0 && delta < 1)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    return std::max(1, (int)std::ceil(config.gamma * std::log2(1 / delta) - 1e-9));
}

DetectionResult detect_marked(const WalkSpectrum &spectrum, int tree_size, int depth_bound, double delta, int trials,
                              const DetectionConfig &config, std::mt19937_64 &rng) {
    DetectionResult r;
    r.k = trials > 0 ? trials : detection_repetitions(delta, config);
    r.precision = config.beta / std::sqrt((double)tree_size * (double)depth_bound);
    double p = std::clamp(phase_mass_at_zero(spectrum, r.precision), 0.0, 1.0);
    std::bernoulli_distribution accept(p);
    for (int k = 0; k < r.k; k++) {
        r.per_trial_phase_mass.push_back(p);
        r.acceptances += accept(rng) ? 1 : 0;
    }
    r.verdict = 8 * r.acceptances >= 3 * r.k ? DetectionVerdict::kMarkedExists : DetectionVerdict::kNoMarked;
    return r;
}

DetectionResult detect_marked(const WalkTree &walk, double delta, int trials, const DetectionConfig &config,
                              std::mt19937_64 &rng) {
    auto spectrum = walk_spectrum(build_walk_operator(walk));
    return detect_marked(spectrum, walk.tree.size(), walk.depth_bound, delta, trials, config, rng);
}

namespace {

// Subtree of v and the original index of each of its vertices.
Tree extract(const Tree &t, int v, std::vector<int> &origin) {
    Tree out;
    origin.clear();
    auto copy = [&](auto &&self, int x, int par) -> void {
        int id = out.add(par, t.marked[x]);
        origin.push_back(x);
        for (int c : t.children[x]) {
            self(self, c, id);
        }
    };
    copy(copy, v, -1);
    return out;
}

}  // namespace

FindResult find_marked(const WalkTree &walk, double delta, const DetectionConfig &config, std::mt19937_64 &rng,
                       int max_retries) {
    FindResult r;
    const Tree &t = walk.tree;
    r.detections++;
    if (detect_marked(walk, delta, 0, config, rng).verdict == DetectionVerdict::kNoMarked) {
        return r;
    }
    int v = 0;
    int attempt = 0;
    while (true) {
        if (t.marked[v]) {
            r.vertex = v;
            return r;
        }
        int next = -1;
        for (int c : t.children[v]) {
            if (t.marked[c]) {
                next = c;
                break;
            }
            std::vector<int> origin;
            Tree sub = extract(t, c, origin);
            r.detections++;
            auto d = detect_marked(WalkTree{sub, walk.depth_bound}, delta, 0, config, rng);
            if (d.verdict == DetectionVerdict::kMarkedExists) {
                next = c;
                break;
            }
        }
        if (next >= 0) {
            v = next;
            attempt = 0;
            continue;
        }
        if (attempt++ >= max_retries) {
            r.inconsistent = true;
            return r;
        }
        r.retries++;
    }
}

std::vector<WalkTree> calibration_corpus(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<WalkTree> out;
    for (int k = 0; k < count; k++) {
        int n = 3 + k % 8;
        int m = (int)std::lround((3.0 + (double)(rng() % 300) / 100) * n);
        auto f = random_k_cnf(n, m, 3, rng);
        auto search = build_search_tree(f, EngineConfig::dpll());
        if (search.steps[0].leaf == LeafKind::kSatisfied) {
            continue;
        }
        out.push_back(WalkTree::from_search_tree(search, n));
    }
    return out;
}

double calibrate_beta(const std::vector<WalkTree> &corpus) {
    std::vector<std::pair<WalkSpectrum, int>> unmarked;
    for (const auto &w : corpus) {
        bool any = std::any_of(w.tree.marked.begin(), w.tree.marked.end(), [](bool b) { return b; });
        if (!any) {
            unmarked.emplace_back(walk_spectrum(build_walk_operator(w)), w.tree.size() * w.depth_bound);
        }
    }
    double best = 0;
    for (int step = 1; step <= 10; step++) {
        double beta = step / 10.0;
        bool ok = true;
        for (const auto &[s, tn] : unmarked) {
            ok = ok && phase_mass_at_zero(s, beta / std::sqrt((double)tn)) <= 0.25;
        }
        if (ok) {
            best = beta;
        }
    }
    return best;
}

}  // namespace hybridts
