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

#include "hybridts/walk_circuit.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hybridts/qcircuit.h"
#include "hybridts/qwalk.h"

using namespace hybridts;

namespace {

std::vector<PartialAssignment> all_assignments(int n) {
    std::vector<PartialAssignment> out;
    int total = 1;
    for (int v = 0; v < n; v++) {
        total *= 3;
    }
    for (int code = 0; code < total; code++) {
        PartialAssignment a(n);
        int c = code;
        for (int v = 1; v <= n; v++, c /= 3) {
            if (c % 3) {
                a.set(v, c % 3 == 2);
            }
        }
        out.push_back(a);
    }
    return out;
}

int read_bit(const BasisState &s, int wire) {
    return s[wire] ? 1 : 0;
}

// Every wire outside the two vertex registers.
std::vector<int> outside_vertices(const WalkLayout &L) {
    std::vector<int> out;
    for (int w = 4 * L.n; w < L.num_wires; w++) {
        out.push_back(w);
    }
    return out;
}

bool zero_on(const BasisState &s, const std::vector<int> &wires) {
    for (int w : wires) {
        if (s[w]) {
            return false;
        }
    }
    return true;
}

CnfFormula random_small(std::mt19937_64 &rng, int n) {
    int m = 2 + (int)(rng() % (3 * n));
    return random_k_cnf(n, m, 1 + (int)(rng() % std::min(3, n)), rng);
}

// Checks the classical components on every partial assignment.
void check_classical(const CnfFormula &f, const EngineConfig &config) {
    auto comps = build_walk_components(f, config);
    const auto &L = comps.layout;
    auto order = config.order(f.num_vars());
    for (const auto &a : all_assignments(f.num_vars())) {
        BasisState in = encode_vertex(L, a);
        REQUIRE(decode_vertex(L, in) == a);
        Verdict verdict = evaluate_predicate(f, a);

        auto leaf = trace(comps.leaf, in);
        CHECK(leaf.all_restored());
        CHECK(read_bit(leaf.output, L.leaf) == (verdict != Verdict::kUndetermined));
        auto marked = trace(comps.marked, in);
        CHECK(marked.all_restored());
        CHECK(read_bit(marked.output, L.marked) == (verdict == Verdict::kSatisfied));

        for (std::size_t r = 0; r < config.rules.size(); r++) {
            auto t = trace(comps.rules[r], in);
            CHECK(t.all_restored());
            int var = (int)read_register(t.output, L.rule_var[r]);
            bool sign = t.output[L.rule_sign[r]];
            std::optional<ForcedLiteral> expected;
            if (config.rules[r] == ReductionRule::kUnit) {
                if (verdict == Verdict::kContradiction) {
                    continue;
                }
                expected = unit_rule(f, a, order);
            } else {
                expected = pure_literal_rule(f, a, order);
            }
            CHECK(var == (expected ? expected->var : 0));
            CHECK(sign == (expected ? expected->value : false));
        }

        auto free = trace(comps.first_free, in);
        CHECK(free.all_restored());
        int first = 0;
        for (int v : order) {
            if (!a.is_set(v)) {
                first = v;
                break;
            }
        }
        CHECK((int)read_register(free.output, L.free_var) == first);
    }
}

// Sparse state on |x>|y> with all other wires zero.
SparseState vertex_pair(const WalkLayout &L, const PartialAssignment &x, const PartialAssignment &y) {
    return {{encode_vertex(L, x) | encode_vertex(L, y, true), 1.0}};
}

struct Star {
    std::vector<int> support;
    Eigen::MatrixXd reflection;
};

Star star_of(const WalkTree &walk, int x) {
    auto d = build_diffusion(walk, x);
    Star s{d.support, Eigen::MatrixXd::Identity((int)d.support.size(), (int)d.support.size())};
    if (!d.identity) {
        Eigen::Map<const Eigen::VectorXd> psi(d.psi.data(), (Eigen::Index)d.psi.size());
        s.reflection -= 2 * psi * psi.transpose();
    }
    return s;
}

// U_A on every tree vertex, and R_A blockwise against the classical stars.
void check_walk(const CnfFormula &f, const EngineConfig &config) {
    auto search = build_search_tree(f, config);
    auto walk = WalkTree::from_search_tree(search, f.num_vars());
    auto comps = build_walk_components(f, config);
    const auto &L = comps.layout;
    auto others = outside_vertices(L);
    PartialAssignment blank(f.num_vars());
    for (int x = 0; x < search.shape.size(); x++) {
        const auto &ax = search.nodes[x].assignment;
        // U_A |x>|0> = |x> (sum over the star of psi_y |y>), index cleared.
        SparseState s = vertex_pair(L, ax, blank);
        simulate(comps.va, s);
        std::vector<double> expect;
        std::vector<int> support{x};
        if (search.steps[x].leaf != LeafKind::kNone) {
            expect = {1.0};
        } else {
            auto d = build_diffusion(walk, x);
            expect = d.psi;
            support = d.support;
        }
        double seen = 0;
        for (const auto &[basis, amp] : s) {
            if (std::abs(amp) < 1e-12) {
                continue;
            }
            CHECK(zero_on(basis, others));
            CHECK(decode_vertex(L, basis) == ax);
            auto y = decode_vertex(L, basis, true);
            bool matched = false;
            for (std::size_t i = 0; i < support.size(); i++) {
                if (search.nodes[support[i]].assignment == y) {
                    CHECK(std::abs(amp - expect[i]) < 1e-9);
                    matched = true;
                }
            }
            CHECK(matched);
            seen += std::norm(amp);
        }
        CHECK(seen == doctest::Approx(1.0).epsilon(1e-9));

        // R_A on |x>|y> for y in the star of x.
        Star star = star_of(walk, x);
        bool active = search.nodes[x].depth % 2 == 0 && !search.shape.marked[x];
        for (std::size_t j = 0; j < star.support.size(); j++) {
            SparseState r = vertex_pair(L, ax, search.nodes[star.support[j]].assignment);
            simulate(comps.ra, r);
            double mass = 0;
            for (const auto &[basis, amp] : r) {
                if (std::abs(amp) < 1e-12) {
                    continue;
                }
                CHECK(zero_on(basis, others));
                CHECK(decode_vertex(L, basis) == ax);
                auto y = decode_vertex(L, basis, true);
                bool matched = false;
                for (std::size_t i = 0; i < star.support.size(); i++) {
                    if (search.nodes[star.support[i]].assignment == y) {
                        double want = active ? star.reflection(i, j) : (i == j ? 1.0 : 0.0);
                        CHECK(std::abs(amp - want) < 1e-9);
                        matched = true;
                    }
                }
                CHECK(matched);
                mass += std::norm(amp);
            }
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

}  // namespace

TEST_SUITE("walk_circuit") {
TEST_CASE("unit rule example") {
    auto f = CnfFormula::from_ints(3, {{2}, {1, 3}});
    auto comps = build_walk_components(f);
    const auto &L = comps.layout;
    auto t = trace(comps.rules[0], encode_vertex(L, PartialAssignment(3)));
    CHECK(read_register(t.output, L.rule_var[0]) == 2);
    CHECK(t.output[L.rule_sign[0]]);
    CHECK(t.all_restored());
}

TEST_CASE("pure literal example") {
    auto f = CnfFormula::from_ints(2, {{1, 2}, {1, -2}});
    auto comps = build_walk_components(f);
    const auto &L = comps.layout;
    auto t = trace(comps.rules[1], encode_vertex(L, PartialAssignment(2)));
    CHECK(read_register(t.output, L.rule_var[1]) == 1);
    CHECK(t.output[L.rule_sign[1]]);
    auto unit = trace(comps.rules[0], encode_vertex(L, PartialAssignment(2)));
    CHECK(read_register(unit.output, L.rule_var[0]) == 0);
}

TEST_CASE("classical components on every partial assignment") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 24; trial++) {
        check_classical(random_small(rng, 2 + trial % 4), EngineConfig::dpll());
    }
}

TEST_CASE("rule order and variable permutation") {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 12; trial++) {
        int n = 3 + trial % 3;
        EngineConfig config = EngineConfig::dpll();
        config.rules = {ReductionRule::kPureLiteral, ReductionRule::kUnit};
        config.permutation.resize(n);
        for (int v = 0; v < n; v++) {
            config.permutation[v] = v + 1;
        }
        std::shuffle(config.permutation.begin(), config.permutation.end(), rng);
        auto f = random_small(rng, n);
        check_classical(f, config);
        if (!f.empty()) {
            check_walk(f, config);
        }
        config.rules = {ReductionRule::kUnit};
        check_classical(f, config);
    }
}

TEST_CASE("next writes the chosen child") {
    auto f = CnfFormula::from_ints(3, {{1, -2, 3}, {-1, 2}});
    auto comps = build_walk_components(f);
    const auto &L = comps.layout;
    for (const auto &a : all_assignments(3)) {
        for (int v = 1; v <= 3; v++) {
            if (a.is_set(v)) {
                continue;
            }
            for (bool b : {false, true}) {
                BasisState in = encode_vertex(L, a);
                write_register(in, L.child_var, (std::uint64_t)v);
                in[L.child_value] = b;
                auto t = trace(comps.next, in);
                PartialAssignment child = a;
                child.set(v, b);
                CHECK(decode_vertex(L, t.output, true) == child);
                CHECK(decode_vertex(L, t.output) == a);
                CHECK(trace(comps.next, t.output).output == in);
            }
        }
    }
}

TEST_CASE("predicates and reflections are involutions") {
    std::mt19937_64 rng(73);
    auto f = random_small(rng, 4);
    auto comps = build_walk_components(f);
    const auto &L = comps.layout;
    for (const auto &a : all_assignments(4)) {
        BasisState in = encode_vertex(L, a);
        for (const Circuit *c : {&comps.leaf, &comps.marked}) {
            CHECK(trace(*c, trace(*c, in).output).output == in);
        }
    }
    auto search = build_search_tree(f, EngineConfig::dpll());
    PartialAssignment blank(4);
    for (int x = 0; x < std::min(6, search.shape.size()); x++) {
        SparseState s = vertex_pair(L, search.nodes[x].assignment, search.nodes[0].assignment);
        simulate(comps.ra, s);
        simulate(comps.ra, s);
        BasisState start = encode_vertex(L, search.nodes[x].assignment) | encode_vertex(L, search.nodes[0].assignment, true);
        for (const auto &[basis, amp] : s) {
            CHECK(std::abs(amp - (basis == start ? Amplitude(1.0) : Amplitude(0.0))) < 1e-9);
        }
        SparseState u = vertex_pair(L, search.nodes[x].assignment, blank);
        simulate(comps.va, u);
        simulate(comps.va.inverse(), u);
        for (const auto &[basis, amp] : u) {
            bool is_start = basis == encode_vertex(L, search.nodes[x].assignment);
            CHECK(std::abs(amp - (is_start ? Amplitude(1.0) : Amplitude(0.0))) < 1e-9);
        }
    }
}

TEST_CASE("walk step matches the search tree stars") {
    std::mt19937_64 rng(74);
    check_walk(CnfFormula::from_ints(3, {{1, 2}, {-1, 3}, {-2, -3}}), EngineConfig::dpll());
    for (int trial = 0; trial < 10; trial++) {
        auto f = random_small(rng, 3 + trial % 2);
        if (!f.empty()) {
            check_walk(f, EngineConfig::dpll());
        }
    }
}

TEST_CASE("superposed centres stay disentangled") {
    auto f = CnfFormula::from_ints(3, {{1, 2, 3}, {-1, -2}, {2, -3}});
    auto comps = build_walk_components(f);
    const auto &L = comps.layout;
    auto search = build_search_tree(f, EngineConfig::dpll());
    REQUIRE(search.shape.size() >= 3);
    PartialAssignment blank(3);
    SparseState s;
    double h = 1 / std::sqrt(2.0);
    s[encode_vertex(L, search.nodes[0].assignment)] = h;
    s[encode_vertex(L, search.nodes[1].assignment)] = h;
    simulate(comps.va, s);
    double total = 0;
    for (const auto &[basis, amp] : s) {
        CHECK(zero_on(basis, outside_vertices(L)));
        total += std::norm(amp);
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("wire count grows logarithmically beyond the vertex registers") {
    auto expected = [](int n, int m, int rules) {
        int jw = 1;
        while ((1 << jw) <= n) {
            jw++;
        }
        return 4 * n + 2 * counter_width(m) + jw * (rules + 2) + rules + 11;
    };
    std::mt19937_64 rng(75);
    for (int n : {3, 4, 8, 16, 40}) {
        int m = 4 * n;
        auto f = random_k_cnf(n, m, 3, rng);
        auto comps = build_walk_components(f);
        CHECK(comps.layout.num_wires == expected(n, f.num_clauses(), 2));
        CHECK(comps.layout.extra_wires() <= 8 * (int)std::log2(4.0 * n) + 16);
        CHECK(wires_used(comps.ra) <= comps.layout.num_wires);
        auto costs = comps.qubit_costs();
        CHECK(costs.back().first == "ra");
    }
    auto f = random_k_cnf(5, 20, 3, rng);
    EngineConfig unit_only = EngineConfig::dpll();
    unit_only.rules = {ReductionRule::kUnit};
    CHECK(build_walk_components(f, unit_only).layout.num_wires == expected(5, f.num_clauses(), 1));
}

TEST_CASE("unsupported engines are rejected") {
    auto f = CnfFormula::from_ints(3, {{1, 2, 3}});
    CHECK_THROWS_AS(build_walk_components(f, EngineConfig::dnc_ppsz(2, 1)), std::invalid_argument);
    EngineConfig s_rule = EngineConfig::dpll();
    s_rule.rules = {ReductionRule::kSImplication};
    CHECK_THROWS_AS(build_walk_components(f, s_rule), std::invalid_argument);
    CHECK_THROWS_AS(state_preparation({1, 1, 0, 0}), std::invalid_argument);
    auto prep = state_preparation({0.6, 0.8, 0, 0});
    CHECK(std::abs(prep(0, 0) - 0.6) < 1e-12);
    CHECK(std::abs(prep(1, 0) - 0.8) < 1e-12);
}
}
