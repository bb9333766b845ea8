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
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.h"

using namespace hybridts;

namespace {

Eigen::MatrixXcd random_block(int wires, std::mt19937_64 &rng) {
    return random_eigen_pair(wires, 0.0, rng).unitary;
}

// Random circuit over every gate kind.
Circuit random_circuit(int wires, int gates, std::mt19937_64 &rng) {
    Circuit c(wires);
    for (int g = 0; g < gates; g++) {
        int kind = (int)(rng() % 5);
        int t = (int)(rng() % wires);
        int u = (t + 1 + (int)(rng() % (wires - 1))) % wires;
        int v = (u + 1) % wires == t ? (u + 2) % wires : (u + 1) % wires;
        switch (kind) {
            case 0:
                c.x(t, {{u, (rng() & 1) != 0}});
                break;
            case 1:
                c.h(t);
                break;
            case 2:
                c.unitary({t, u}, random_block(2, rng), {{v, true}});
                break;
            case 3:
                c.increment({t, u}, (rng() & 1) ? 1 : -1, {{v, false}});
                break;
            default:
                c.phase_flip({{t, true}, {u, false}});
        }
    }
    return c;
}

StateVector random_state(int wires, std::mt19937_64 &rng) {
    StateVector s(wires);
    std::normal_distribution<double> gauss;
    double norm = 0;
    for (auto &a : s.amplitudes()) {
        a = Amplitude(gauss(rng), gauss(rng));
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return s;
}

double max_diff(const StateVector &a, const StateVector &b) {
    double d = 0;
    for (std::size_t i = 0; i < a.amplitudes().size(); i++) {
        d = std::max(d, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
    }
    return d;
}

}  // namespace

TEST_SUITE("qcircuit") {
TEST_CASE("single gates") {
    Circuit c(1);
    c.x(0);
    StateVector s = StateVector::basis(1, 0);
    simulate(c, s);
    CHECK(std::abs(s.amplitudes()[1] - Amplitude(1)) < 1e-15);

    std::mt19937_64 rng(41);
    Circuit hh(3);
    hh.h(1);
    hh.h(1);
    StateVector r = random_state(3, rng), r0 = r;
    simulate(hh, r);
    CHECK(max_diff(r, r0) < 1e-12);

    Circuit inc(3);
    inc.increment({0, 1, 2});
    CHECK(inc.num_wires() == 3);
    StateVector b = StateVector::basis(3, 7);
    simulate(inc, b);
    CHECK(std::abs(b.amplitudes()[0] - Amplitude(1)) < 1e-15);
}

TEST_CASE("inverse undoes random circuits") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; trial++) {
        Circuit c = random_circuit(5, 10, rng);
        Circuit round = c;
        round.append(c.inverse());
        StateVector s = random_state(5, rng), s0 = s;
        simulate(round, s);
        CHECK(max_diff(s, s0) < 1e-12);
        CHECK(std::abs(s.norm() - 1) < 1e-10);
    }
}

TEST_CASE("sparse and dense simulators agree") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; trial++) {
        Circuit c = random_circuit(6, 25, rng);
        std::uint64_t start = rng() % 64;
        StateVector dense = StateVector::basis(6, start);
        simulate(c, dense);
        SparseState sparse{{BasisState(start), Amplitude(1)}};
        simulate(c, sparse);
        for (std::uint64_t i = 0; i < 64; i++) {
            auto it = sparse.find(BasisState(i));
            Amplitude a = it == sparse.end() ? Amplitude(0) : it->second;
            CHECK(std::abs(a - dense.amplitudes()[i]) < 1e-12);
        }
    }
}

TEST_CASE("trace path matches dense evolution") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 50; trial++) {
        Circuit c(6);
        for (int g = 0; g < 15; g++) {
            int t = (int)(rng() % 6), u = (t + 1) % 6, v = (t + 3) % 6;
            switch (rng() % 3) {
                case 0:
                    c.x(t, {{u, true}, {v, (rng() & 1) != 0}});
                    break;
                case 1:
                    c.increment({t, u}, 1, {{v, true}});
                    break;
                default:
                    c.phase_flip({{t, false}});
            }
        }
        REQUIRE(c.classical());
        std::uint64_t start = rng() % 64;
        auto tr = trace(c, BasisState(start));
        StateVector s = StateVector::basis(6, start);
        // Two nonzero amplitudes force the gate-by-gate path.
        StateVector pair(6);
        pair.amplitudes()[start] = 1 / std::sqrt(2.0);
        pair.amplitudes()[start ^ 1] = 1 / std::sqrt(2.0);
        simulate(c, s);
        simulate(c, pair);
        std::uint64_t out = tr.output.to_ullong();
        CHECK(std::abs(s.amplitudes()[out] - Amplitude(tr.sign)) < 1e-15);
        CHECK(std::abs(pair.amplitudes()[out] - Amplitude(tr.sign / std::sqrt(2.0))) < 1e-15);
    }
}

TEST_CASE("checkpoints flag dirty ancillas") {
    Circuit c(3);
    c.x(1, {{0, true}});
    c.checkpoint("after compute", {1});
    c.x(1, {{0, true}});
    c.checkpoint("after uncompute", {1});
    auto t = trace(c, BasisState(1));
    REQUIRE(t.restored.size() == 2);
    CHECK(!t.restored[0].second);
    CHECK(t.restored[1].second);
    CHECK(!t.all_restored());
    Circuit bad(2);
    CHECK_THROWS_AS(bad.x(2), std::invalid_argument);
    CHECK_THROWS_AS(bad.x(0, {{0, true}}), std::invalid_argument);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    m(0, 0) = 2;
    CHECK_THROWS_AS(bad.unitary({0}, m), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(dense_wire_cap() + 1), std::length_error);
    Circuit h(1);
    h.h(0);
    CHECK_THROWS_AS(trace(h, BasisState()), std::invalid_argument);
    CHECK(h.to_text() == "wires 1\nH t:0\n");
}

TEST_CASE("clause oracle on the three-literal example") {
    auto f = CnfFormula::from_ints(3, {{-1, -2, 3}});
    for (auto variant : {OracleVariant::kNaive, OracleVariant::kCounter}) {
        auto o = build_clause_oracle(f, variant);
        // x = 1, y = 1, z = 0 falsifies the clause: unmarked.
        CHECK(oracle_phase(o, 0b011) == 1);
        CHECK(oracle_phase(o, 0b111) == -1);
        CHECK(oracle_phase(o, 0b000) == -1);
    }
}

TEST_CASE("oracle phases match the truth table exhaustively") {
    std::mt19937_64 rng(45);
    for (int n = 1; n <= 12; n++) {
        int reps = n <= 8 ? 6 : 2;
        for (int r = 0; r < reps; r++) {
            int m = (int)(rng() % (4 * n + 2));
            auto f = random_k_cnf(n, m, std::min(3, n), rng);
            for (auto variant : {OracleVariant::kNaive, OracleVariant::kCounter}) {
                auto o = build_clause_oracle(f, variant);
                auto table = oracle_phase_table(o);
                for (std::uint64_t x = 0; x < table.size(); x++) {
                    REQUIRE(table[x] == (oracle::satisfies(f, x) ? -1 : 1));
                }
            }
        }
    }
    auto with_empty = CnfFormula::from_ints(2, {{1}, {}});
    CHECK(oracle_phase(build_clause_oracle_counter(with_empty), 1) == 1);
    CHECK(oracle_phase(build_clause_oracle_naive(CnfFormula::from_ints(2, {})), 0) == -1);
}

TEST_CASE("phase kickback through a minus target") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 10; trial++) {
        auto f = random_k_cnf(4, 6, 3, rng);
        for (auto variant : {OracleVariant::kNaive, OracleVariant::kCounter}) {
            auto o = build_clause_oracle(f, variant);
            for (std::uint64_t x = 0; x < 16; x++) {
                SparseState s;
                BasisState zero, one;
                for (int v = 0; v < 4; v++) {
                    zero[o.inputs[v]] = ((x >> v) & 1) != 0;
                }
                one = zero;
                one[o.target] = true;
                s[zero] = 1 / std::sqrt(2.0);
                s[one] = -1 / std::sqrt(2.0);
                simulate(o.circuit, s);
                Amplitude overlap = s[zero] / (1 / std::sqrt(2.0));
                CHECK(std::abs(overlap - Amplitude(oracle_phase(o, x))) < 1e-12);
            }
        }
    }
}

TEST_CASE("oracle wire counts") {
    auto f = CnfFormula::from_ints(4, {{1, 2}, {-2, 3}, {-1, -4}});
    auto cost = oracle_qubit_costs(f);
    CHECK(cost.naive_wires == 9);
    CHECK(cost.counter_wires == 4 + 2 + 1);
    CHECK(cost.one_ancilla_wires == 6);
    CHECK(cost.counter_ancillas == 2);
    CHECK(counter_width(1) == 1);
    CHECK(counter_width(4) == 3);
    CHECK(counter_width(7) == 3);
}

TEST_CASE("grover closed form") {
    auto one = CnfFormula::from_ints(2, {{1}, {2}});
    auto r = grover_search(one, 1);
    CHECK(r.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.assignment == std::vector<bool>{true, true});
    CHECK(grover_closed_form(2, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grover_optimal_iterations(2, 1) == 1);
    auto all = CnfFormula::from_ints(3, {});
    CHECK(grover_search(all, 0).success_probability == doctest::Approx(1.0));
    CHECK(grover_optimal_iterations(3, 8) == 0);

    std::mt19937_64 rng(47);
    for (int n = 2; n <= 12; n++) {
        for (int r2 = 0; r2 < 3; r2++) {
            auto f = random_k_cnf(n, (int)(rng() % (3 * n)) + 1, 3 <= n ? 3 : n, rng);
            std::uint64_t m = count_solutions(f);
            int k = grover_optimal_iterations(n, m);
            for (int iters : {k, k / 2, k + 1}) {
                auto g = grover_search(f, iters, (r2 & 1) ? OracleVariant::kNaive : OracleVariant::kCounter);
                CHECK(std::abs(g.success_probability - grover_closed_form(n, m, iters)) < 1e-6);
                auto fast = grover_from_phases(oracle_phase_table(build_clause_oracle_counter(f)), n, iters, true);
                CHECK(std::abs(fast.success_probability - g.success_probability) < 1e-12);
            }
        }
    }
}

TEST_CASE("full-width grover circuit matches the phase table loop") {
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 6; trial++) {
        auto f = random_k_cnf(4, 3 + trial, 3, rng);
        for (auto variant : {OracleVariant::kNaive, OracleVariant::kCounter}) {
            if (variant == OracleVariant::kNaive && f.num_clauses() + 6 > 14) {
                continue;
            }
            for (int iters = 0; iters <= 3; iters++) {
                double full = grover_full_circuit_success(f, iters, variant);
                CHECK(std::abs(full - grover_search(f, iters, variant).success_probability) < 1e-10);
            }
        }
    }
}

TEST_CASE("phase estimation zero outcome") {
    std::mt19937_64 rng(49);
    auto zero = random_eigen_pair(2, 0.0, rng);
    for (int t = 1; t <= 6; t++) {
        CHECK(qpe_standard(zero.unitary, zero.eigenstate, t).probability == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(qpe_counter(zero.unitary, zero.eigenstate, t).probability == doctest::Approx(1.0).epsilon(1e-10));
    }
    auto half = random_eigen_pair(1, 0.5, rng);
    CHECK(std::abs(qpe_standard(half.unitary, half.eigenstate, 1).probability) < 1e-12);
    CHECK(std::abs(qpe_counter(half.unitary, half.eigenstate, 1).probability) < 1e-12);
    for (int trial = 0; trial < 20; trial++) {
        double theta = std::uniform_real_distribution<double>()(rng);
        int t = 1 + (int)(rng() % 6);
        auto e = random_eigen_pair(1 + (int)(rng() % 3), theta, rng);
        CHECK(std::abs(qpe_standard(e.unitary, e.eigenstate, t).probability - qpe_zero_closed_form(theta, t)) < 1e-10);
    }
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
    z(1, 1) = -1;
    Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(2, 1 / std::sqrt(2.0));
    CHECK_THROWS_AS(qpe_standard(z, plus, 2), std::invalid_argument);
    CHECK_THROWS_AS(qpe_counter(z, plus, 2), std::invalid_argument);
    CHECK_THROWS_AS(qpe_counter(half.unitary, half.eigenstate, 7), std::invalid_argument);
}

TEST_CASE("counter phase estimation equals the standard circuit") {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 100; trial++) {
        int t = 1 + trial % 6;
        double theta = trial % 5 == 0 ? (double)(rng() % 8) / 8 : std::uniform_real_distribution<double>()(rng);
        auto e = random_eigen_pair(1 + (int)(rng() % 3), theta, rng);
        auto p0 = qpe_standard(e.unitary, e.eigenstate, t);
        auto p1 = qpe_counter(e.unitary, e.eigenstate, t);
        CHECK(std::abs(p0.probability - p1.probability) <= 1e-9);
        int log_t = (int)std::ceil(std::log2((double)t) - 1e-12);
        CHECK(p1.ancilla_wires == 1 + log_t);
        CHECK(p0.ancilla_wires == t);
    }
}

TEST_CASE("counting every round needs one more counter wire at powers of two") {
    std::mt19937_64 rng(51);
    auto e = random_eigen_pair(1, 0.3, rng);
    double p0 = qpe_standard(e.unitary, e.eigenstate, 2).probability;
    // Two increments wrap a one-wire counter back to zero.
    double wrapped = qpe_counter_every_round(e.unitary, e.eigenstate, 2, 1).probability;
    CHECK(std::abs(wrapped - p0) > 1e-3);
    for (int t = 1; t <= 6; t++) {
        int bits = (int)std::ceil(std::log2((double)t + 1) - 1e-12);
        double full = qpe_counter_every_round(e.unitary, e.eigenstate, t, bits).probability;
        CHECK(std::abs(full - qpe_standard(e.unitary, e.eigenstate, t).probability) < 1e-10);
    }
}
}
