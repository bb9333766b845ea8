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

#include "hybridts/latticesat.h"

#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "hybridts/sia.h"
#include "oracles.h"

using namespace hybridts;

namespace {

PlaquetteConstraint on(int r, int c, std::vector<std::pair<Corner, bool>> corners) {
    PlaquetteConstraint pc{r, c, {}};
    for (auto [k, pos] : corners) {
        pc.corners.push_back({corner_point(r, c, k), pos});
    }
    return pc;
}

// Random 3-CNF over n <= 8 variables with mixed clause widths and ratios.
CnfFormula random_small(std::mt19937_64 &rng) {
    int n = 3 + (int)(rng() % 6);
    int m = 1 + (int)(rng() % (7 * n));
    return random_k_cnf(n, m, 3, rng);
}

// Lattice model built from a model of the source: chains copy their
// variable, split chains take "first two literals both false".
std::vector<bool> lift_model(const LatticeReduction &red, const CompactLatticeCnf &lat, std::uint64_t bits) {
    std::map<GridPoint, int> index;
    for (std::size_t k = 0; k < lat.points.size(); k++) {
        index[lat.points[k]] = (int)k;
    }
    std::vector<bool> model(lat.points.size(), false);
    const auto &pad = red.artifacts.padded;
    for (const auto &ch : red.artifacts.chains) {
        bool value;
        if (ch.var != 0) {
            value = oracle::lit_true(ch.var, true, bits);
        } else {
            const Clause &c = pad.clause(ch.clause - 1);
            value = !oracle::lit_true(c[0].var, c[0].positive, bits) && !oracle::lit_true(c[1].var, c[1].positive, bits);
        }
        for (GridPoint p : ch.points) {
            model[index.at(p)] = value;
        }
    }
    return model;
}

}  // namespace

TEST_SUITE("latticesat") {
TEST_CASE("validation") {
    LatticeInstance ok{2, {on(0, 0, {{Corner::kNW, true}, {Corner::kNE, false}, {Corner::kSW, true}})}};
    CHECK(validate_lattice(ok).ok);

    LatticeInstance off = ok;
    off.constraints[0].corners[1].point = {0, 2};
    off.side = 3;
    auto v = validate_lattice(off);
    CHECK(!v.ok);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].find("not on plaquette") != std::string::npos);

    LatticeInstance two_only{3, {on(0, 0, {{Corner::kNW, true}, {Corner::kNE, true}})}};
    CHECK(!validate_lattice(two_only).ok);

    LatticeInstance outside{2, {on(1, 0, {{Corner::kNW, true}, {Corner::kNE, true}, {Corner::kSE, true}})}};
    CHECK(!validate_lattice(outside).ok);

    LatticeInstance repeated = ok;
    repeated.constraints[0].corners[2].point = {0, 0};
    CHECK(!validate_lattice(repeated).ok);

    LatticeInstance four = ok;
    four.constraints[0].corners.push_back({{1, 1}, true});
    CHECK(!validate_lattice(four).ok);
    CHECK_THROWS_AS(lattice_to_cnf(four), std::invalid_argument);
}

TEST_CASE("row-major clauses and index width") {
    // Plaquette (0,0) of a 3x3 grid: NW = x1, NE = x2, SW = x4.
    LatticeInstance inst{3, {on(0, 0, {{Corner::kNW, true}, {Corner::kSW, false}, {Corner::kNE, true}})}};
    auto f = lattice_to_cnf(inst);
    CHECK(f.num_vars() == 9);
    REQUIRE(f.num_clauses() == 1);
    CHECK(f == CnfFormula::from_ints(9, {{1, -4, 2}}));
    CHECK(index_width(f) <= 4);

    LatticeInstance diag{3, {}};
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            diag.constraints.push_back(on(r, c, {{Corner::kNW, true}, {Corner::kNE, false}, {Corner::kSE, true}}));
        }
    }
    CHECK(index_width(lattice_to_cnf(diag)) == 4);

    // Horizontal pairs only (plus the required 3-corner plaquette, also
    // horizontal in its NW-NE part and checked separately).
    LatticeInstance flat{4, {}};
    for (int r = 0; r < 3; r++) {
        for (int c = 0; c < 3; c++) {
            flat.constraints.push_back(on(r, c, {{Corner::kNW, true}, {Corner::kNE, false}}));
        }
    }
    CHECK(index_width(CnfFormula(16, [&] {
              std::vector<Clause> cs;
              for (const auto &pc : flat.constraints) {
                  cs.push_back({{flat.variable_of(pc.corners[0].point), true},
                                {flat.variable_of(pc.corners[1].point), false}});
              }
              return cs;
          }())) == 1);
    flat.constraints.push_back(on(2, 2, {{Corner::kNW, true}, {Corner::kNE, true}, {Corner::kSE, true}}));
    CHECK(index_width(lattice_to_cnf(flat)) == 5);

    for (std::uint64_t seed = 0; seed < 40; seed++) {
        int side = 2 + (int)(seed % 7);
        auto r = random_lattice_instance(seed, side, 0.2 + 0.02 * (double)seed);
        CHECK(index_width(lattice_to_cnf(r)) <= side + 1);
    }
}

TEST_CASE("compact numbering keeps the clauses") {
    auto inst = random_lattice_instance(3, 6, 0.3);
    auto full = lattice_to_cnf(inst);
    auto lat = compact_lattice_cnf(inst);
    CHECK(std::is_sorted(lat.points.begin(), lat.points.end()));
    REQUIRE(lat.formula.num_clauses() == full.num_clauses());
    std::set<std::vector<int>> a, b;
    for (const auto &c : full.clauses()) {
        std::vector<int> lits;
        for (auto l : c) {
            lits.push_back(l.dimacs());
        }
        a.insert(lits);
    }
    for (const auto &c : lat.formula.clauses()) {
        std::vector<int> lits;
        for (auto l : c) {
            int v = inst.variable_of(lat.points[l.var - 1]);
            lits.push_back(l.positive ? v : -v);
        }
        b.insert(lits);
    }
    CHECK(a == b);
    CHECK(index_width(lat.formula) <= index_width(full));
}

TEST_CASE("random instances") {
    auto a = random_lattice_instance(11, 7, 0.4);
    auto b = random_lattice_instance(11, 7, 0.4);
    CHECK(a == b);
    CHECK(!(a == random_lattice_instance(12, 7, 0.4)));
    auto full = random_lattice_instance(5, 6, 1.0);
    CHECK(full.constraints.size() == 25);
    std::set<std::pair<int, int>> seen;
    for (const auto &c : full.constraints) {
        seen.insert({c.row, c.col});
    }
    CHECK(seen.size() == 25);
    for (std::uint64_t seed = 0; seed < 200; seed++) {
        auto r = random_lattice_instance(seed, 2 + (int)(seed % 5), 0.01 + 0.0049 * (double)seed);
        CHECK(validate_lattice(r).ok);
    }
    CHECK_THROWS_AS(random_lattice_instance(1, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(random_lattice_instance(1, 4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(random_lattice_instance(1, 4, 1.5), std::invalid_argument);
}

TEST_CASE("json round trip") {
    auto inst = random_lattice_instance(9, 5, 0.5);
    CHECK(lattice_from_json(lattice_to_json(inst)) == inst);
    auto named = lattice_from_json(
        R"({"side":2,"constraints":[{"row":0,"col":0,"corners":[{"corner":"NW","positive":true},)"
        R"({"corner":"SE","positive":false},{"corner":"SW","positive":true}]}]})");
    REQUIRE(named.constraints.size() == 1);
    CHECK(named.constraints[0].corners[1].point == GridPoint{1, 1});
    CHECK(!named.constraints[0].corners[1].positive);
    CHECK_THROWS_AS(lattice_from_json("{\"side\":2}"), std::invalid_argument);
}

TEST_CASE("small reductions") {
    auto one = CnfFormula::from_ints(3, {{1, 2, 3}});
    auto red = reduce_3sat_to_lattice(one);
    CHECK(validate_lattice(red.instance).ok);
    auto rep = equisat_check(one, red.instance);
    CHECK(rep.agree);
    CHECK(rep.lattice == SolveVerdict::kSat);

    auto contra = CnfFormula::from_ints(1, {{1}, {-1}});
    auto cred = reduce_3sat_to_lattice(contra);
    CHECK(cred.artifacts.slack_variables == 4);
    CHECK(cred.artifacts.padded.max_clause_size() == 3);
    auto crep = equisat_check(contra, cred.instance);
    CHECK(crep.agree);
    CHECK(crep.lattice == SolveVerdict::kUnsat);

    auto empty = CnfFormula(2, {});
    auto ered = reduce_3sat_to_lattice(empty);
    CHECK(validate_lattice(ered.instance).ok);
    CHECK(equisat_check(empty, ered.instance).agree);

    CHECK_THROWS_AS(reduce_3sat_to_lattice(CnfFormula::from_ints(4, {{1, 2, 3, 4}})), std::invalid_argument);
    CHECK_THROWS_AS(reduce_3sat_to_lattice(CnfFormula(2, {Clause{}})), std::invalid_argument);
    CHECK_THROWS_AS(equisat_check(one, red.instance, 10), std::length_error);
}

TEST_CASE("reduction structure") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 20; trial++) {
        auto f = random_small(rng);
        auto red = reduce_3sat_to_lattice(f);
        const auto &art = red.artifacts;
        int n = art.padded.num_vars(), L = art.padded.num_clauses();
        CAPTURE(trial);
        CHECK(validate_lattice(red.instance).ok);
        CHECK(red.instance.side <= 16 * n * L);
        CHECK(art.side_per_nl == doctest::Approx((double)red.instance.side / (n * L)));
        CHECK(index_width(lattice_to_cnf(red.instance)) <= red.instance.side + 1);

        // Points belong to one chain, except drop origins on their bus.
        std::map<GridPoint, int> owner;
        std::map<GridPoint, int> bus_owner;
        for (std::size_t k = 0; k < art.chains.size(); k++) {
            const auto &ch = art.chains[k];
            for (std::size_t j = 0; j < ch.points.size(); j++) {
                GridPoint p = ch.points[j];
                CHECK(p.row < red.instance.side);
                CHECK(p.col < red.instance.side);
                if (ch.role == ChainRole::kCopy) {
                    bus_owner[p] = ch.var;
                }
                if (j == 0 && (ch.role == ChainRole::kFeedWest || ch.role == ChainRole::kFeedEast)) {
                    continue;
                }
                CHECK(owner.count(p) == 0);
                owner[p] = (int)k;
            }
        }
        for (const auto &ch : art.chains) {
            if (ch.role == ChainRole::kFeedWest || ch.role == ChainRole::kFeedEast) {
                CHECK(bus_owner.at(ch.points[0]) == ch.var);
            }
        }

        // Each consecutive copy pair sits on its variable's bus, joined by
        // both implications along the path.
        std::set<std::tuple<int, int, int, int, bool>> implications;
        for (const auto &c : red.instance.constraints) {
            if (c.corners.size() == 2 && c.corners[0].positive != c.corners[1].positive) {
                const auto &neg = c.corners[0].positive ? c.corners[1] : c.corners[0];
                const auto &pos = c.corners[0].positive ? c.corners[0] : c.corners[1];
                implications.insert({neg.point.row, neg.point.col, pos.point.row, pos.point.col, true});
            }
        }
        CHECK((int)art.placement.size() == n * L);
        for (const auto &pl : art.placement) {
            CHECK(bus_owner.at(pl.point) == pl.var);
        }
        for (const auto &ch : art.chains) {
            for (std::size_t j = 0; j + 1 < ch.points.size(); j++) {
                GridPoint p = ch.points[j], q = ch.points[j + 1];
                CHECK(implications.count({p.row, p.col, q.row, q.col, true}) == 1);
                CHECK(implications.count({q.row, q.col, p.row, p.col, true}) == 1);
            }
        }

        // A crossing for every drop passing a lower bus.
        int expected = 0;
        for (const auto &c : art.padded.clauses()) {
            expected += (n - c[0].var) + 2 * (n - c[1].var) + (n - c[2].var);
        }
        CHECK((int)art.crossings.size() == expected);
        CHECK(std::is_sorted(art.crossings.begin(), art.crossings.end(), [](const auto &a, const auto &b) {
            return std::pair(a.tile_row, a.tile_col) < std::pair(b.tile_row, b.tile_col);
        }));
        for (const auto &x : art.crossings) {
            CHECK(x.drop_var < x.bus_var);
        }
    }
}

TEST_CASE("models of the source lift to the lattice") {
    std::mt19937_64 rng(92);
    int lifted = 0;
    for (int trial = 0; trial < 30; trial++) {
        auto f = random_small(rng);
        auto red = reduce_3sat_to_lattice(f);
        auto lat = compact_lattice_cnf(red.instance);
        const auto &pad = red.artifacts.padded;
        for (std::uint64_t bits = 0; bits < (1ULL << pad.num_vars()); bits++) {
            if (oracle::satisfies(pad, bits)) {
                CHECK(lat.formula.satisfied_by(lift_model(red, lat, bits)));
                lifted++;
                break;
            }
        }
    }
    CHECK(lifted >= 5);
}

TEST_CASE("equisatisfiability sweep") {
    std::mt19937_64 rng(93);
    int sat = 0, unsat = 0;
    for (int trial = 0; trial < 100; trial++) {
        auto f = random_small(rng);
        auto red = reduce_3sat_to_lattice(f);
        auto rep = equisat_check(f, red.instance);
        CAPTURE(trial);
        CHECK(rep.agree);
        bool truth = oracle::brute_sat(f);
        CHECK((rep.source == SolveVerdict::kSat) == truth);
        (truth ? sat : unsat)++;
    }
    CHECK(sat >= 5);
    CHECK(unsat >= 5);
}

TEST_CASE("copy chains agree in lattice models") {
    std::mt19937_64 rng(94);
    int checked = 0;
    for (int trial = 0; trial < 20; trial++) {
        auto f = random_small(rng);
        auto red = reduce_3sat_to_lattice(f);
        auto lat = compact_lattice_cnf(red.instance);
        auto res = dpll_solve(lat.formula);
        if (res.verdict != SolveVerdict::kSat) {
            continue;
        }
        checked++;
        std::map<GridPoint, bool> value;
        for (std::size_t k = 0; k < lat.points.size(); k++) {
            value[lat.points[k]] = res.assignment[k];
        }
        std::vector<bool> source(red.artifacts.padded.num_vars() + 1);
        for (const auto &ch : red.artifacts.chains) {
            for (GridPoint p : ch.points) {
                CHECK(value.at(p) == value.at(ch.points[0]));
            }
            if (ch.role == ChainRole::kCopy) {
                source[ch.var] = value.at(ch.points[0]);
            }
        }
        std::vector<bool> full(source.begin() + 1, source.end());
        CHECK(red.artifacts.padded.satisfied_by(full));
    }
    CHECK(checked >= 5);
}

TEST_CASE("dropped equality is reported") {
    // x1 and not x1: cutting x1's bus between the two clause columns splits
    // the copies, so the lattice side becomes satisfiable.
    auto f = CnfFormula::from_ints(1, {{1}, {-1}});
    auto red = reduce_3sat_to_lattice(f);
    const auto &pad = red.artifacts.padded;
    int L = pad.num_clauses();
    REQUIRE(L == 8);
    GridPoint p{0, 16 * 4 - 1}, q{0, 16 * 4};
    LatticeInstance cut = red.instance;
    std::erase_if(cut.constraints, [&](const PlaquetteConstraint &c) {
        return c.corners.size() == 2 &&
               ((c.corners[0].point == p && c.corners[1].point == q) ||
                (c.corners[0].point == q && c.corners[1].point == p));
    });
    REQUIRE(cut.constraints.size() == red.instance.constraints.size() - 2);
    auto rep = equisat_check(f, cut);
    CHECK(!rep.agree);
    CHECK(rep.source == SolveVerdict::kUnsat);
    CHECK(rep.lattice == SolveVerdict::kSat);

    // Random cuts: the report matches separate solver calls.
    std::mt19937_64 rng(95);
    for (int trial = 0; trial < 10; trial++) {
        auto g = random_small(rng);
        auto gr = reduce_3sat_to_lattice(g);
        LatticeInstance mutated = gr.instance;
        std::size_t k;
        do {
            k = rng() % mutated.constraints.size();
        } while (mutated.constraints[k].corners.size() != 2);
        mutated.constraints.erase(mutated.constraints.begin() + (long)k);
        auto mrep = equisat_check(g, mutated);
        bool lat_sat = dpll_solve(compact_lattice_cnf(mutated).formula).verdict == SolveVerdict::kSat;
        CHECK((mrep.lattice == SolveVerdict::kSat) == lat_sat);
        CHECK((mrep.source == SolveVerdict::kSat) == oracle::brute_sat(g));
        CHECK(mrep.agree == ((mrep.source == SolveVerdict::kSat) == lat_sat));
    }
}

TEST_CASE("lattice corpus feeds the locality check") {
    for (std::uint64_t seed = 0; seed < 12; seed++) {
        int side = 2 + (int)(seed % 3);
        auto inst = random_lattice_instance(seed, side, 0.6);
        auto f = lattice_to_cnf(inst);
        auto rep = locality_check(f, side + 1, 1 + (int)(seed % 2), 40, seed);
        CHECK(rep.checked > 0);
        CHECK(rep.mismatches == 0);
    }
}
}
