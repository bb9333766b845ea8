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

#ifndef HYBRIDTS_QWALK_H
#define HYBRIDTS_QWALK_H

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hybridts/tree.h"
#include "hybridts/treesearch.h"

namespace hybridts {

/// Search tree seen by the walk: shape, marked flags, and the depth bound n
/// that weights the root's children.
struct WalkTree {
    Tree tree;
    int depth_bound = 1;

    /// Throws std::invalid_argument if the root is marked or the bound is below the height.
    static WalkTree from_tree(Tree tree, int depth_bound);
    /// Marks satisfied leaves; the depth bound is the variable count.
    static WalkTree from_search_tree(const SearchTree &search, int num_vars);
};

/// D_x = I - 2|psi><psi| on span{x, children of x}, or the identity.
struct Diffusion {
    int vertex = 0;
    bool identity = false;
    /// Vertex first, then its children.
    std::vector<int> support;
    std::vector<double> psi;
};

Diffusion build_diffusion(const WalkTree &walk, int vertex);

struct WalkOperator {
    int dimension = 0;
    /// Reflections over the even-depth stars.
    Eigen::MatrixXd ra;
    /// |r><r| plus reflections over the odd-depth stars.
    Eigen::MatrixXd rb;

    Eigen::MatrixXd walk() const {
        return rb * ra;
    }
    /// max |U^T U - I| over both reflections.
    double unitarity_residual() const;
};

/// Throws std::length_error when the vertex count exceeds the dimension cap.
WalkOperator build_walk_operator(const WalkTree &walk);

/// Eigenphases of R_B R_A in [0, pi] and the weight of |r> on each. The
/// operator is real orthogonal, so the phase pair +-phi shares one eigenspace
/// of the symmetric part with eigenvalue cos(phi).
struct WalkSpectrum {
    int dimension = 0;
    std::vector<double> phases;
    std::vector<double> root_weight;
};

WalkSpectrum walk_spectrum(const WalkOperator &op);

/// Weight of |r> on eigenphases with |phi| < precision (radians).
double phase_mass_at_zero(const WalkSpectrum &spectrum, double precision);
double phase_mass_at_zero(const WalkOperator &op, double precision);
/// Weight of |r> on eigenphases within 1e-9 of zero.
double exact_zero_mass(const WalkSpectrum &spectrum);
/// Probability that t-bit phase estimation of R_B R_A on |r> reads all zeros:
/// sum over eigenphases of weight * prod_j cos^2(2^(j-1) phi).
double qpe_zero_probability(const WalkSpectrum &spectrum, int t);

struct DetectionConfig {
    /// Precision multiplier: phase estimation runs at beta / sqrt(T n).
    double beta = 1.0;
    /// Repetitions K = ceil(gamma log2(1/delta)).
    double gamma = 30.0;
};

/// Frozen calibration (see calibrate_beta).
DetectionConfig default_detection_config();

enum class DetectionVerdict { kMarkedExists, kNoMarked };

struct DetectionResult {
    DetectionVerdict verdict = DetectionVerdict::kNoMarked;
    int acceptances = 0;
    int k = 0;
    std::vector<double> per_trial_phase_mass;
    double precision = 0;
};

int detection_repetitions(double delta, const DetectionConfig &config);

/// K ideal phase estimations, each accepting with the phase-0 mass of |r>.
/// `trials` > 0 overrides K. Marked iff acceptances >= 3K/8.
DetectionResult detect_marked(const WalkSpectrum &spectrum, int tree_size, int depth_bound, double delta, int trials,
                              const DetectionConfig &config, std::mt19937_64 &rng);
DetectionResult detect_marked(const WalkTree &walk, double delta, int trials, const DetectionConfig &config,
                              std::mt19937_64 &rng);

struct FindResult {
    std::optional<int> vertex;
    int detections = 0;
    int retries = 0;
    /// A positive verdict was followed by no positive child after all retries.
    bool inconsistent = false;
};

/// Descends from the root, following a child whose subtree tests positive.
FindResult find_marked(const WalkTree &walk, double delta, const DetectionConfig &config, std::mt19937_64 &rng,
                       int max_retries = 3);

/// Largest beta in {0.1, ..., 1.0} keeping the phase-0 mass of every
/// unmarked tree at most 1/4.
double calibrate_beta(const std::vector<WalkTree> &corpus);
/// Calibration corpus: DPLL trees of seeded random 3-CNF with n = 3..10.
std::vector<WalkTree> calibration_corpus(std::uint64_t seed, int count);

}  // namespace hybridts

#endif
