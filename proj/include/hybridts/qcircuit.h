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

#ifndef HYBRIDTS_QCIRCUIT_H
#define HYBRIDTS_QCIRCUIT_H

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hybridts/circuit.h"
#include "hybridts/formula.h"

namespace hybridts {

enum class OracleVariant { kNaive, kCounter };

/// Bit-flip formula oracle: target ^= F(x), ancillas restored. With the target
/// prepared in |-> it acts as the phase oracle (-1)^F(x).
struct OracleCircuit {
    OracleVariant variant = OracleVariant::kNaive;
    Circuit circuit;
    /// Wire v-1 holds x_v.
    std::vector<int> inputs;
    std::vector<int> ancillas;
    int target = 0;
};

/// One ancilla per clause, one for their conjunction, one target: n + m + 2 wires.
OracleCircuit build_clause_oracle_naive(const CnfFormula &formula);
/// A floor(log2 m) + 1 wide satisfied-clause counter and one target.
OracleCircuit build_clause_oracle_counter(const CnfFormula &formula);
OracleCircuit build_clause_oracle(const CnfFormula &formula, OracleVariant variant);

int counter_width(int num_clauses);

/// (-1)^F(x) read off the traced circuit; x holds x_v in bit v-1. Throws
/// std::logic_error if an ancilla is not restored.
int oracle_phase(const OracleCircuit &oracle, std::uint64_t x);
/// oracle_phase for every x; needs n <= 26.
std::vector<std::int8_t> oracle_phase_table(const OracleCircuit &oracle);

struct GroverResult {
    /// Most likely measured assignment (x_v at index v-1).
    std::vector<bool> assignment;
    double success_probability = 0;
    int iterations = 0;
    std::int64_t oracle_calls = 0;
};

/// Grover loop on n wires: oracle phases, then H^n, reflection about |0^n>, H^n.
GroverResult grover_search(const CnfFormula &formula, int iterations, OracleVariant variant = OracleVariant::kCounter);
/// Same loop over an explicit phase table (-1 marks a solution). The inversion
/// about the mean replaces the gate sequence when `fast_diffusion` is set.
GroverResult grover_from_phases(const std::vector<std::int8_t> &phases, int num_qubits, int iterations,
                                bool fast_diffusion = false);
/// Whole Grover circuit on every oracle wire, simulated densely; small n only.
double grover_full_circuit_success(const CnfFormula &formula, int iterations, OracleVariant variant);

/// sin^2((2k+1) theta), sin^2 theta = M / 2^n.
double grover_closed_form(int num_qubits, std::uint64_t solutions, int iterations);
/// floor(pi / (4 theta)), 0 when M = 0 or M = 2^n.
int grover_optimal_iterations(int num_qubits, std::uint64_t solutions);

struct QpeResult {
    /// Probability of the zero outcome (all-zero estimate or zero counter).
    double probability = 0;
    int num_wires = 0;
    int ancilla_wires = 0;
    std::size_t gate_count = 0;
};

/// t estimate wires, Hadamards, controlled U^(2^j), Hadamards.
Circuit build_qpe_standard_circuit(const Eigen::MatrixXcd &u, int t);
/// One reused estimate wire and a ceil(log2 t) counter. The counter records
/// the first t-1 rounds; the last round is read from the estimate wire.
Circuit build_qpe_counter_circuit(const Eigen::MatrixXcd &u, int t);

/// Throws std::invalid_argument unless `eigenstate` is an eigenvector of u
/// (residual <= 1e-8), u is unitary on at most 6 wires and 1 <= t <= 6.
QpeResult qpe_standard(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &eigenstate, int t);
QpeResult qpe_counter(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &eigenstate, int t);
/// Same circuits on any normalized input state.
QpeResult qpe_standard_on_state(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t);
QpeResult qpe_counter_on_state(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t);
/// The counting circuit read literally: every round increments a counter of
/// `counter_bits` wires and only the counter is read.
QpeResult qpe_counter_every_round(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t, int counter_bits);

/// prod_{j<t} cos^2(pi 2^j theta).
double qpe_zero_closed_form(double theta, int t);

struct EigenPair {
    Eigen::MatrixXcd unitary;
    Eigen::VectorXcd eigenstate;
    double theta = 0;
};

/// Haar-like unitary on `num_wires` wires with a known eigenvector of phase
/// e^(2 pi i theta).
EigenPair random_eigen_pair(int num_wires, double theta, std::mt19937_64 &rng);

/// Exact wire counts of the formula oracles and the walk bound.
struct QubitCostReport {
    int n = 0;
    int m = 0;
    int naive_wires = 0;
    int counter_wires = 0;
    /// n + 2: the one-ancilla program target (cost model only).
    int one_ancilla_wires = 0;
    int naive_ancillas = 0;
    int counter_ancillas = 0;
};

QubitCostReport oracle_qubit_costs(const CnfFormula &formula);

}  // namespace hybridts

#endif
