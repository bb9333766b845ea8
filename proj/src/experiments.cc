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

#include "hybridts/experiments.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hybridts/qcircuit.h"
#include "hybridts/treesearch.h"

namespace hybridts {

namespace {

// Clause as bit masks over a full assignment (bit v-1 is x_v).
struct MaskClause {
    std::uint64_t pos = 0, neg = 0;
};

std::vector<MaskClause> masks_of(const CnfFormula &f) {
    std::vector<MaskClause> out;
    for (const Clause &c : f.clauses()) {
        MaskClause m;
        for (const Literal &l : c) {
            (l.positive ? m.pos : m.neg) |= std::uint64_t{1} << (l.var - 1);
        }
        out.push_back(m);
    }
    return out;
}

bool satisfies(const std::vector<MaskClause> &clauses, std::uint64_t x) {
    for (const auto &c : clauses) {
        if (((x & c.pos) | (~x & c.neg)) == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

SethHybridReport seth_hybrid(const CnfFormula &formula, double kappa, std::uint64_t seed) {
    if (!(kappa > 0 && kappa <= 1)) {
        throw std::invalid_argument("kappa must lie in (0, 1]");
    }
    int n = formula.num_vars();
    if (n > 30) {
        throw std::invalid_argument("seth_hybrid handles at most 30 variables");
    }
    SethHybridReport r;
    r.n = n;
    r.kappa = kappa;
    r.suffix_bits = (int)std::lround(kappa * n);
    r.prefix_bits = n - r.suffix_bits;
    r.predicted_queries = std::exp2((1 - kappa / 2) * n);

    auto clauses = masks_of(formula);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t cube = std::uint64_t{1} << r.suffix_bits;
    double root = std::sqrt((double)cube);
    auto cap = (std::int64_t)std::ceil(2.25 * root);
    std::vector<std::int8_t> phases(cube);
    std::vector<std::uint64_t> marked;

    for (std::uint64_t prefix = 0; prefix < (std::uint64_t{1} << r.prefix_bits) && !r.found; prefix++) {
        r.subcubes++;
        marked.clear();
        for (std::uint64_t s = 0; s < cube; s++) {
            bool sat = satisfies(clauses, prefix | (s << r.prefix_bits));
            phases[s] = sat ? -1 : 1;
            if (sat) {
                marked.push_back(s);
            }
        }
        double bound = 1.0;
        std::int64_t spent = 0;
        while (spent < cap) {
            auto j = (int)std::floor(unit(rng) * bound);
            double p = grover_from_phases(phases, r.suffix_bits, j, true).success_probability;
            spent += j;
            r.grover_iterations += j;
            r.checks++;
            // Solutions share one amplitude, so a hit is uniform over them.
            if (unit(rng) < p && !marked.empty()) {
                std::uint64_t s = marked[rng() % marked.size()];
                std::uint64_t x = prefix | (s << r.prefix_bits);
                r.found = true;
                r.assignment.resize(n);
                for (int v = 0; v < n; v++) {
                    r.assignment[v] = ((x >> v) & 1) != 0;
                }
                break;
            }
            bound = std::min(bound * 1.2, root);
        }
    }
    r.oracle_queries = r.grover_iterations;
    return r;
}

ExponentFit seth_exponent_fit(int n_from, int n_to, double kappa, std::uint64_t seed, double clause_ratio) {
    ExponentFit out;
    out.predicted = 1 - kappa / 2;
    std::mt19937_64 rng(seed);
    std::vector<double> xs;
    for (int n = n_from; n <= n_to; n++) {
        CnfFormula f;
        do {
            f = random_k_cnf(n, (int)std::lround(clause_ratio * n), 3, rng);
        } while (dpll_solve(f).verdict == SolveVerdict::kSat);
        auto rep = seth_hybrid(f, kappa, rng());
        out.ns.push_back(n);
        xs.push_back(n);
        out.log2_values.push_back(std::log2((double)rep.oracle_queries));
    }
    out.fit = fit_line(xs, out.log2_values);
    return out;
}

ExponentFit hybrid_exponent_fit(double lambda, double kappa_prime, int n_from, int n_to) {
    ExponentFit out;
    out.predicted = predicted_exponent(kappa_prime, lambda);
    std::vector<double> xs;
    for (int n = n_from; n <= n_to; n++) {
        auto tree = LeveledTree::uniform(n, lambda);
        auto dec = tree.decompose(SizeMeasure::kHeight, (int)std::lround(kappa_prime * n));
        out.ns.push_back(n);
        xs.push_back(n);
        out.log2_values.push_back(std::log2(hybrid_query_count(dec, Phi::kSqrt)));
    }
    out.fit = fit_line(xs, out.log2_values);
    return out;
}

}  // namespace hybridts
