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

#ifndef HYBRIDTS_WALK_CIRCUIT_H
#define HYBRIDTS_WALK_CIRCUIT_H

#include <string>
#include <utility>
#include <vector>

#include "hybridts/circuit.h"
#include "hybridts/formula.h"
#include "hybridts/treesearch.h"

namespace hybridts {

/// Wire map shared by every walk component. A partial assignment takes two
/// wires per variable: a set bit and a value bit, the value bit 0 when unset.
struct WalkLayout {
    int n = 0;
    int m = 0;
    /// Vertex register, index v-1 for variable v.
    std::vector<int> x_set, x_val;
    /// Child register.
    std::vector<int> y_set, y_val;
    /// Clause counters, floor(log2 m) + 1 wide.
    std::vector<int> count_a, count_b;
    int scratch_u = 0, scratch_g = 0;
    int leaf = 0, marked = 0, parity = 0, flag = 0, root = 0, two = 0;
    /// One (variable, sign) pair per reduction rule, in rule order.
    std::vector<std::vector<int>> rule_var;
    std::vector<int> rule_sign;
    std::vector<int> free_var;
    std::vector<int> child_var;
    int child_value = 0;
    /// Child index 0..2 (two wires).
    std::vector<int> index;
    int num_wires = 0;

    /// Everything beyond the two 2n-wire registers.
    int extra_wires() const {
        return num_wires - 4 * n;
    }
    std::vector<int> scratch() const;
};

/// Reversible DPLL walk components over one shared layout. Each component
/// writes its result into zeroed output wires and restores every scratch wire;
/// the predicates (leaf, marked) and next are XOR-style and self-inverse.
struct WalkComponents {
    WalkLayout layout;
    /// leaf ^= [F restricted to x is satisfied or contradicted].
    Circuit leaf;
    /// marked ^= [F restricted to x is satisfied].
    Circuit marked;
    /// rule_var[r], rule_sign[r] ^= literal forced by rule r, 0 when none.
    std::vector<Circuit> rules;
    /// free_var ^= first unset variable in the engine order.
    Circuit first_free;
    /// Y ^= x with variable child_var set to child_value.
    Circuit next;
    /// x and its children in superposition on Y, index register cleared.
    Circuit va;
    /// Reflection over even-depth unmarked stars, in star-centred form.
    Circuit ra;

    std::vector<std::pair<std::string, int>> qubit_costs() const;
};

/// Accepts DPLL configurations whose rules are unit and pure literal.
/// Throws std::invalid_argument otherwise.
WalkComponents build_walk_components(const CnfFormula &formula, const EngineConfig &config = EngineConfig::dpll());

/// Distinct wires touched by the circuit's gates.
int wires_used(const Circuit &circuit);

BasisState encode_vertex(const WalkLayout &layout, const PartialAssignment &a, bool child_register = false);
PartialAssignment decode_vertex(const WalkLayout &layout, const BasisState &s, bool child_register = false);

/// Unitary on two wires whose first column is the given real unit vector.
Eigen::MatrixXcd state_preparation(const std::vector<double> &amplitudes);

}  // namespace hybridts

#endif
