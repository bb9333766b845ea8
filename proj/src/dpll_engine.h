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

#ifndef HYBRIDTS_DPLL_ENGINE_H
#define HYBRIDTS_DPLL_ENGINE_H

#include <set>
#include <vector>

#include "hybridts/treesearch.h"

namespace hybridts {

/// Trail-based DPLL over unit and pure-literal rules. Visits exactly the
/// vertices the restriction-based engine visits, in the same order, but keeps
/// per-clause counters instead of rebuilding the restricted formula, so it
/// scales to formulas with hundreds of thousands of variables.
class TrailDpll {
   public:
    TrailDpll(const CnfFormula &formula, const EngineConfig &config);

    /// Runs depth-first search. With stop_at_first the search ends at the first
    /// satisfied leaf and the stats cover the traversed part only.
    SolveResult run(bool stop_at_first);

   private:
    struct ClauseState {
        int size;
        int n_true = 0;
        int n_false = 0;
    };
    struct Occurrence {
        int clause;
        bool positive;
    };

    void assign(int var, bool value);
    void unassign(int var);
    void unit_add(int var, bool positive);
    void unit_remove(int var, bool positive);
    void refresh_pure(int var);
    int open_literal(int clause, bool *positive) const;
    bool next_forced(int *var, bool *value) const;

    const CnfFormula &formula_;
    std::vector<ReductionRule> rules_;
    int n_;
    std::vector<int> rank_;
    std::vector<int> var_at_rank_;
    std::vector<ClauseState> clauses_;
    std::vector<std::vector<Occurrence>> occ_;
    std::vector<signed char> value_;
    std::vector<int> alive_pos_, alive_neg_;
    std::vector<int> unit_pos_, unit_neg_;
    std::set<int> units_, pures_, unset_;
    int satisfied_ = 0;
    int falsified_ = 0;
};

}  // namespace hybridts

#endif
