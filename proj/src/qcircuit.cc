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

#include "hybridts/qcircuit.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hybridts {

namespace {

// Controls that hold exactly when every literal of the clause is false.
std::vector<Control> all_false(const Clause &clause, const std::vector<int> &inputs) {
    std::vector<Control> out;
    for (const auto &lit : clause) {
        out.push_back({inputs[lit.var - 1], !lit.positive});
    }
    return out;
}

}  // namespace

int counter_width(int num_clauses) {
    int width = 1;
    while ((1 << width) <= num_clauses) {
        width++;
    }
    return width;
}

OracleCircuit build_clause_oracle_naive(const CnfFormula &formula) {
    OracleCircuit o;
    o.variant = OracleVariant::kNaive;
    int n = formula.num_vars(), m = formula.num_clauses();
    o.inputs = o.circuit.add_register(n);
    std::vector<int> clause_bits = o.circuit.add_register(m);
    int conj = o.circuit.add_wires(1);
    o.target = o.circuit.add_wires(1);
    o.ancillas = clause_bits;
    o.ancillas.push_back(conj);

    Circuit compute(o.circuit.num_wires());
    for (int j = 0; j < m; j++) {
        // C = not(all literals false).
        compute.x(clause_bits[j]);
        compute.x(clause_bits[j], all_false(formula.clause(j), o.inputs));
    }
    std::vector<Control> every;
    for (int w : clause_bits) {
        every.push_back({w, true});
    }
    compute.x(conj, every);
    o.circuit.append(compute);
    o.circuit.x(o.target, {{conj, true}});
    o.circuit.append(compute.inverse());
    o.circuit.checkpoint("uncompute", o.ancillas);
    return o;
}

OracleCircuit build_clause_oracle_counter(const CnfFormula &formula) {
    OracleCircuit o;
    o.variant = OracleVariant::kCounter;
    int n = formula.num_vars(), m = formula.num_clauses();
    o.inputs = o.circuit.add_register(n);
    std::vector<int> counter = o.circuit.add_register(counter_width(m));
    o.target = o.circuit.add_wires(1);
    o.ancillas = counter;

    Circuit compute(o.circuit.num_wires());
    for (int j = 0; j < m; j++) {
        compute.increment(counter, 1);
        compute.increment(counter, -1, all_false(formula.clause(j), o.inputs));
    }
    o.circuit.append(compute);
    o.circuit.x(o.target, equals(counter, (std::uint64_t)m));
    o.circuit.append(compute.inverse());
    o.circuit.checkpoint("uncompute", o.ancillas);
    return o;
}

OracleCircuit build_clause_oracle(const CnfFormula &formula, OracleVariant variant) {
    return variant == OracleVariant::kNaive ? build_clause_oracle_naive(formula) : build_clause_oracle_counter(formula);
}

int oracle_phase(const OracleCircuit &oracle, std::uint64_t x) {
    BasisState in;
    for (std::size_t v = 0; v < oracle.inputs.size(); v++) {
        in[oracle.inputs[v]] = ((x >> v) & 1) != 0;
    }
    auto t = trace(oracle.circuit, in);
    if (!t.all_restored()) {
        throw std::logic_error("oracle left an ancilla dirty");
    }
    BasisState expected = in;
    expected[oracle.target] = t.output[oracle.target];
    if (expected != t.output) {
        throw std::logic_error("oracle changed a wire other than its target");
    }
    return t.output[oracle.target] ? -1 : 1;
}

std::vector<std::int8_t> oracle_phase_table(const OracleCircuit &oracle) {
    int n = (int)oracle.inputs.size();
    if (n > 26) {
        throw std::length_error("phase table needs n <= 26");
    }
    std::vector<std::int8_t> table(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < table.size(); x++) {
        table[x] = (std::int8_t)oracle_phase(oracle, x);
    }
    return table;
}

GroverResult grover_from_phases(const std::vector<std::int8_t> &phases, int num_qubits, int iterations,
                                bool fast_diffusion) {
    if (iterations < 0) {
        throw std::invalid_argument("negative iteration count");
    }
    if (phases.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("phase table size is not 2^n");
    }
    std::vector<int> wires(num_qubits);
    for (int k = 0; k < num_qubits; k++) {
        wires[k] = k;
    }
    Circuit hadamards(num_qubits), diffusion(num_qubits);
    for (int w : wires) {
        hadamards.h(w);
    }
    diffusion.append(hadamards);
    diffusion.reflect_about_zero(wires);
    diffusion.append(hadamards);

    StateVector state = StateVector::basis(num_qubits, 0);
    simulate(hadamards, state);
    auto &a = state.amplitudes();
    for (int it = 0; it < iterations; it++) {
        for (std::size_t i = 0; i < a.size(); i++) {
            if (phases[i] < 0) {
                a[i] = -a[i];
            }
        }
        if (fast_diffusion) {
            // H (I - 2|0><0|) H = I - 2|s><s|.
            Amplitude mean(0);
            for (const auto &v : a) {
                mean += v;
            }
            mean /= (double)a.size();
            for (auto &v : a) {
                v -= 2.0 * mean;
            }
        } else {
            simulate(diffusion, state);
        }
    }
    GroverResult r;
    r.iterations = iterations;
    r.oracle_calls = iterations;
    std::size_t best = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        if (phases[i] < 0) {
            r.success_probability += std::norm(a[i]);
        }
        if (std::norm(a[i]) > std::norm(a[best]) + 1e-12) {
            best = i;
        }
    }
    r.assignment.resize(num_qubits);
    for (int v = 0; v < num_qubits; v++) {
        r.assignment[v] = ((best >> v) & 1) != 0;
    }
    return r;
}

GroverResult grover_search(const CnfFormula &formula, int iterations, OracleVariant variant) {
    auto oracle = build_clause_oracle(formula, variant);
    return grover_from_phases(oracle_phase_table(oracle), formula.num_vars(), iterations);
}

double grover_full_circuit_success(const CnfFormula &formula, int iterations, OracleVariant variant) {
    auto oracle = build_clause_oracle(formula, variant);
    Circuit c(oracle.circuit.num_wires());
    c.x(oracle.target);
    c.h(oracle.target);
    for (int w : oracle.inputs) {
        c.h(w);
    }
    for (int it = 0; it < iterations; it++) {
        c.append(oracle.circuit);
        for (int w : oracle.inputs) {
            c.h(w);
        }
        c.reflect_about_zero(oracle.inputs);
        for (int w : oracle.inputs) {
            c.h(w);
        }
    }
    StateVector state(c.num_wires());
    state.amplitudes()[0] = 1;
    simulate(c, state);
    int n = formula.num_vars();
    double p = 0;
    const auto &a = state.amplitudes();
    std::vector<bool> full(n);
    for (std::uint64_t i = 0; i < a.size(); i++) {
        if (a[i] == Amplitude(0)) {
            continue;
        }
        for (int v = 0; v < n; v++) {
            full[v] = ((i >> oracle.inputs[v]) & 1) != 0;
        }
        if (formula.satisfied_by(full)) {
            p += std::norm(a[i]);
        }
    }
    return p;
}

double grover_closed_form(int num_qubits, std::uint64_t solutions, int iterations) {
    double theta = std::asin(std::sqrt((double)solutions / std::ldexp(1.0, num_qubits)));
    double s = std::sin((2.0 * iterations + 1) * theta);
    return s * s;
}

int grover_optimal_iterations(int num_qubits, std::uint64_t solutions) {
    if (solutions == 0) {
        return 0;
    }
    return (int)std::floor(std::numbers::pi / 4 * std::sqrt(std::ldexp(1.0, num_qubits) / (double)solutions));
}

namespace {

int wires_of(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols() || u.rows() < 2) {
        throw std::invalid_argument("unitary must be square");
    }
    int k = 0;
    while ((Eigen::Index{1} << k) < u.rows()) {
        k++;
    }
    if ((Eigen::Index{1} << k) != u.rows() || k > 6) {
        throw std::invalid_argument("unitary must act on 1..6 wires");
    }
    double residual = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (residual > 1e-10) {
        throw std::invalid_argument("matrix is not unitary");
    }
    return k;
}

void check_t(int t) {
    if (t < 1 || t > 6) {
        throw std::invalid_argument("t must be in 1..6");
    }
}

int ceil_log2(int t) {
    int p = 0;
    while ((1 << p) < t) {
        p++;
    }
    return p;
}

std::vector<Eigen::MatrixXcd> doubling_powers(const Eigen::MatrixXcd &u, int t) {
    std::vector<Eigen::MatrixXcd> powers{u};
    for (int j = 1; j < t; j++) {
        powers.push_back(powers.back() * powers.back());
    }
    return powers;
}

std::vector<int> range_wires(int first, int count) {
    std::vector<int> w(count);
    for (int k = 0; k < count; k++) {
        w[k] = first + k;
    }
    return w;
}

StateVector embed(const Eigen::VectorXcd &state, int num_wires) {
    if (std::abs(state.norm() - 1) > 1e-9) {
        throw std::invalid_argument("input state is not normalized");
    }
    StateVector s(num_wires);
    for (Eigen::Index i = 0; i < state.size(); i++) {
        s.amplitudes()[i] = state[i];
    }
    return s;
}

void check_eigen(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &v) {
    if (v.size() != u.rows()) {
        throw std::invalid_argument("state dimension mismatch");
    }
    Amplitude lambda = v.dot(u * v);
    if ((u * v - lambda * v).norm() > 1e-8) {
        throw std::invalid_argument("state is not an eigenvector");
    }
}

}  // namespace

Circuit build_qpe_standard_circuit(const Eigen::MatrixXcd &u, int t) {
    int k = wires_of(u);
    check_t(t);
    Circuit c(k + t);
    auto system = range_wires(0, k);
    auto powers = doubling_powers(u, t);
    for (int j = 0; j < t; j++) {
        c.h(k + j);
    }
    for (int j = 0; j < t; j++) {
        c.unitary(system, powers[j], {{k + j, true}});
    }
    for (int j = 0; j < t; j++) {
        c.h(k + j);
    }
    return c;
}

Circuit build_qpe_counter_circuit(const Eigen::MatrixXcd &u, int t) {
    int k = wires_of(u);
    check_t(t);
    int p = ceil_log2(t);
    Circuit c(k + 1 + p);
    auto system = range_wires(0, k);
    auto counter = range_wires(k + 1, p);
    int a = k;
    auto powers = doubling_powers(u, t);
    for (int j = 0; j < t; j++) {
        c.h(a);
        c.unitary(system, powers[j], {{a, true}});
        c.h(a);
        // At most t-1 increments fit in ceil(log2 t) wires.
        if (j + 1 < t) {
            c.increment(counter, 1, {{a, true}});
        }
    }
    return c;
}

QpeResult qpe_standard_on_state(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t) {
    Circuit c = build_qpe_standard_circuit(u, t);
    int k = wires_of(u);
    StateVector s = embed(state, c.num_wires());
    simulate(c, s);
    return {s.probability_zero(range_wires(k, t)), c.num_wires(), t, c.gate_count()};
}

QpeResult qpe_counter_on_state(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t) {
    Circuit c = build_qpe_counter_circuit(u, t);
    int k = wires_of(u);
    StateVector s = embed(state, c.num_wires());
    simulate(c, s);
    int ancillas = c.num_wires() - k;
    return {s.probability_zero(range_wires(k, ancillas)), c.num_wires(), ancillas, c.gate_count()};
}

QpeResult qpe_counter_every_round(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &state, int t, int counter_bits) {
    int k = wires_of(u);
    check_t(t);
    if (counter_bits < 1) {
        throw std::invalid_argument("counter needs at least one wire");
    }
    Circuit c(k + 1 + counter_bits);
    auto system = range_wires(0, k);
    auto counter = range_wires(k + 1, counter_bits);
    auto powers = doubling_powers(u, t);
    for (int j = 0; j < t; j++) {
        c.h(k);
        c.unitary(system, powers[j], {{k, true}});
        c.h(k);
        c.increment(counter, 1, {{k, true}});
    }
    StateVector s = embed(state, c.num_wires());
    simulate(c, s);
    return {s.probability_zero(counter), c.num_wires(), 1 + counter_bits, c.gate_count()};
}

QpeResult qpe_standard(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &eigenstate, int t) {
    check_eigen(u, eigenstate);
    return qpe_standard_on_state(u, eigenstate, t);
}

QpeResult qpe_counter(const Eigen::MatrixXcd &u, const Eigen::VectorXcd &eigenstate, int t) {
    check_eigen(u, eigenstate);
    return qpe_counter_on_state(u, eigenstate, t);
}

double qpe_zero_closed_form(double theta, int t) {
    double p = 1;
    for (int j = 0; j < t; j++) {
        double c = std::cos(std::numbers::pi * std::ldexp(theta, j));
        p *= c * c;
    }
    return p;
}

EigenPair random_eigen_pair(int num_wires, double theta, std::mt19937_64 &rng) {
    Eigen::Index dim = Eigen::Index{1} << num_wires;
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit;
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            g(i, j) = Amplitude(gauss(rng), gauss(rng));
        }
    }
    Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        double th = i == 0 ? theta : unit(rng);
        phases[i] = std::polar(1.0, 2 * std::numbers::pi * th);
    }
    EigenPair out;
    out.unitary = q * phases.asDiagonal() * q.adjoint();
    out.eigenstate = q.col(0);
    out.theta = theta;
    return out;
}

QubitCostReport oracle_qubit_costs(const CnfFormula &formula) {
    QubitCostReport r;
    r.n = formula.num_vars();
    r.m = formula.num_clauses();
    r.naive_wires = build_clause_oracle_naive(formula).circuit.num_wires();
    r.counter_wires = build_clause_oracle_counter(formula).circuit.num_wires();
    r.one_ancilla_wires = r.n + 2;
    r.naive_ancillas = r.m + 1;
    r.counter_ancillas = counter_width(r.m);
    return r;
}

}  // namespace hybridts
