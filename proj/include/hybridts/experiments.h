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

#ifndef HYBRIDTS_EXPERIMENTS_H
#define HYBRIDTS_EXPERIMENTS_H

#include <cstdint>
#include <vector>

#include "hybridts/decomposition.h"
#include "hybridts/formula.h"

namespace hybridts {

/// Brute force over the first n - round(kappa n) variables; every suffix
/// subcube goes to a Grover search with an unknown number of solutions.
struct SethHybridReport {
    int n = 0;
    double kappa = 0;
    int prefix_bits = 0;
    int suffix_bits = 0;
    std::int64_t subcubes = 0;
    std::int64_t grover_iterations = 0;
    /// Classical checks of measured candidates, one per round.
    std::int64_t checks = 0;
    /// Quantum oracle calls: the Grover iterations. Checks are not included.
    std::int64_t oracle_queries = 0;
    /// 2^((1 - kappa/2) n).
    double predicted_queries = 0;
    bool found = false;
    std::vector<bool> assignment;
};

/// Per subcube: exponential search with growth 6/5, a random iteration count
/// below the current bound each round, one check per round, giving up once
/// the iterations spent reach ceil(9/4 sqrt(2^suffix)). Stops at the first
/// verified solution. Throws std::invalid_argument unless 0 < kappa <= 1 and
/// n <= 30.
SethHybridReport seth_hybrid(const CnfFormula &formula, double kappa, std::uint64_t seed);

struct ExponentFit {
    std::vector<int> ns;
    std::vector<double> log2_values;
    LinearFit fit;
    double predicted = 0;
};

/// log2 of total oracle queries against n on unsatisfiable random 3-CNF
/// (clause_ratio * n clauses, resampled until unsatisfiable).
ExponentFit seth_exponent_fit(int n_from, int n_to, double kappa, std::uint64_t seed, double clause_ratio = 10);

/// log2 of T0 + sum sqrt(T_j) against n for uniform trees of height n and
/// density lambda cut at subtree height round(kappa' n).
ExponentFit hybrid_exponent_fit(double lambda, double kappa_prime, int n_from, int n_to);

}  // namespace hybridts

#endif
