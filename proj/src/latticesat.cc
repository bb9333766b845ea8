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

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace hybridts {

namespace {

constexpr std::array<Corner, 4> kCorners{Corner::kNW, Corner::kNE, Corner::kSW, Corner::kSE};

std::string point_text(GridPoint p) {
    return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

bool on_grid(const LatticeInstance &inst, GridPoint p) {
    return p.row >= 0 && p.col >= 0 && p.row < inst.side && p.col < inst.side;
}

Clause clause_of(const PlaquetteConstraint &c, const std::map<GridPoint, int> *index, int side) {
    Clause clause;
    for (const auto &lit : c.corners) {
        int var = index ? index->at(lit.point) : lit.point.row * side + lit.point.col + 1;
        clause.push_back({var, lit.positive});
    }
    return clause;
}

void require_valid(const LatticeInstance &inst) {
    auto v = validate_lattice(inst);
    if (!v.ok) {
        throw std::invalid_argument("invalid lattice instance: " + v.violations.front());
    }
}

// Tiles are 4x4 points. Variable i has its bus on row 4(i-1); clause l owns
// columns 16(l-1) .. 16(l-1)+15 with drops in columns +1, +5, +9 and +13.
// Clause pieces sit below the buses starting at row 4n.
class Reducer {
   public:
    Reducer(const CnfFormula &padded) : f_(padded) {
        n_ = f_.num_vars();
        clauses_ = f_.num_clauses();
        gadget_row_ = 4 * n_;
        width_ = 16 * clauses_;
        out_.instance.side = std::max(gadget_row_ + 6, width_);
    }

    LatticeReduction run() {
        auto &art = out_.artifacts;
        for (int i = 1; i <= n_; i++) {
            bus(i);
        }
        for (int l = 1; l <= clauses_; l++) {
            clause(l);
        }
        for (int i = 1; i <= n_; i++) {
            for (int l = 1; l <= clauses_; l++) {
                art.placement.push_back({i, l, {4 * (i - 1), 16 * (l - 1)}});
            }
        }
        std::sort(art.crossings.begin(), art.crossings.end(), [](const auto &a, const auto &b) {
            return std::pair(a.tile_row, a.tile_col) < std::pair(b.tile_row, b.tile_col);
        });
        art.side_per_nl = (double)out_.instance.side / ((double)n_ * clauses_);
        return std::move(out_);
    }

   private:
    // Variable whose drop runs down column 4 * tile_col + 1, or 0.
    int drop_var(int tile_col) const {
        int l = tile_col / 4;
        if (l >= clauses_) {
            return 0;
        }
        return f_.clause(l)[slot_literal(tile_col % 4)].var;
    }

    // Slots a, b, b, c use literals 0, 1, 1, 2.
    static int slot_literal(int slot) {
        static constexpr int kLiteral[4] = {0, 1, 1, 2};
        return kLiteral[slot];
    }

    // Tile (R, C) holds a crossing when a drop from a higher bus passes row 4R.
    bool crossed(int tile_row, int tile_col) const {
        int v = drop_var(tile_col);
        return v != 0 && tile_row >= v && tile_row < n_;
    }

    void bus(int var) {
        int r = 4 * (var - 1);
        EqualityChain chain{ChainRole::kCopy, var, 0, {}};
        for (int c = 0; c < width_; c++) {
            bool raised = (c % 4 == 1 || c % 4 == 2) && crossed(var - 1, c / 4);
            chain.points.push_back({raised ? r + 1 : r, c});
        }
        emit(std::move(chain));
    }

    void clause(int l) {
        const Clause &cl = f_.clause(l - 1);
        int base = 16 * (l - 1);
        int g = gadget_row_;
        for (int slot = 0; slot < 4; slot++) {
            int var = cl[slot_literal(slot)].var;
            int x = base + 4 * slot + 1;
            ChainRole role = slot % 2 == 0 ? ChainRole::kFeedWest : ChainRole::kFeedEast;
            EqualityChain chain{role, var, l, {}};
            for (int r = 4 * (var - 1); r <= g; r++) {
                bool shifted = (r % 4 == 1 || r % 4 == 2) && r / 4 >= var;
                chain.points.push_back({r, shifted ? x - 1 : x});
                if (r % 4 == 0 && r / 4 >= var && r < g) {
                    out_.artifacts.crossings.push_back({r / 4, x / 4, r / 4 + 1, var, l});
                }
            }
            if (slot == 0) {
                for (int c = x + 1; c <= base + 4; c++) {
                    chain.points.push_back({g, c});
                }
            } else if (slot == 2) {
                chain.points.push_back({g + 1, x});
                chain.points.push_back({g + 2, x});
                for (int c = x + 1; c <= base + 12; c++) {
                    chain.points.push_back({g + 2, c});
                }
            } else if (slot == 3) {
                chain.points.push_back({g + 1, x});
                chain.points.push_back({g + 2, x});
            }
            emit(std::move(chain));
        }

        EqualityChain split{ChainRole::kSplit, 0, l, {}};
        for (int r = g + 1; r <= g + 4; r++) {
            split.points.push_back({r, base + 4});
        }
        for (int c = base + 5; c <= base + 11; c++) {
            split.points.push_back({g + 4, c});
        }
        emit(std::move(split));
        emit({ChainRole::kSplitBack, 0, l, {{g + 3, base + 12}, {g + 4, base + 12}}});

        const Literal &a = cl[0], &b = cl[1], &c = cl[2];
        add({g, base + 4, {{{g, base + 4}, a.positive}, {{g, base + 5}, b.positive}, {{g + 1, base + 4}, true}}});
        add({g + 2,
             base + 12,
             {{{g + 2, base + 12}, b.positive}, {{g + 2, base + 13}, c.positive}, {{g + 3, base + 12}, false}}});
        add({g + 4, base + 11, {{{g + 4, base + 11}, false}, {{g + 4, base + 12}, true}}});
    }

    void emit(EqualityChain chain) {
        for (std::size_t k = 0; k + 1 < chain.points.size(); k++) {
            link(chain.points[k], chain.points[k + 1]);
        }
        out_.artifacts.chains.push_back(std::move(chain));
    }

    // (not p or q) and (p or not q) on a plaquette holding both points.
    void link(GridPoint p, GridPoint q) {
        int side = out_.instance.side;
        int r0 = std::min(p.row, q.row), c0 = std::min(p.col, q.col);
        if (p.row == q.row && r0 + 1 >= side) {
            r0--;
        }
        if (p.col == q.col && c0 + 1 >= side) {
            c0--;
        }
        add({r0, c0, {{p, false}, {q, true}}});
        add({r0, c0, {{p, true}, {q, false}}});
    }

    void add(PlaquetteConstraint c) {
        out_.instance.constraints.push_back(std::move(c));
    }

    const CnfFormula &f_;
    int n_ = 0, clauses_ = 0, gadget_row_ = 0, width_ = 0;
    LatticeReduction out_;
};

CnfFormula pad_to_three(const CnfFormula &formula, int *slack) {
    int next = formula.num_vars();
    std::vector<Clause> out;
    for (const Clause &c : formula.clauses()) {
        if (c.empty() || c.size() > 3) {
            throw std::invalid_argument("reduction needs clauses of one to three literals");
        }
        if (c.size() == 3) {
            out.push_back(c);
        } else if (c.size() == 2) {
            int s = ++next;
            out.push_back({c[0], c[1], {s, true}});
            out.push_back({c[0], c[1], {s, false}});
        } else {
            int s = ++next, u = ++next;
            for (int mask = 0; mask < 4; mask++) {
                out.push_back({c[0], {s, (mask & 1) != 0}, {u, (mask & 2) != 0}});
            }
        }
    }
    *slack = next - formula.num_vars();
    return CnfFormula(next, out);
}

}  // namespace

std::string corner_name(Corner c) {
    switch (c) {
        case Corner::kNW:
            return "NW";
        case Corner::kNE:
            return "NE";
        case Corner::kSW:
            return "SW";
        case Corner::kSE:
            return "SE";
    }
    return "?";
}

GridPoint corner_point(int row, int col, Corner c) {
    bool south = c == Corner::kSW || c == Corner::kSE;
    bool east = c == Corner::kNE || c == Corner::kSE;
    return {row + (south ? 1 : 0), col + (east ? 1 : 0)};
}

std::string chain_role_name(ChainRole r) {
    switch (r) {
        case ChainRole::kCopy:
            return "copy";
        case ChainRole::kFeedWest:
            return "feed-west";
        case ChainRole::kFeedEast:
            return "feed-east";
        case ChainRole::kSplit:
            return "split";
        case ChainRole::kSplitBack:
            return "split-back";
    }
    return "?";
}

LatticeValidation validate_lattice(const LatticeInstance &inst) {
    LatticeValidation out;
    auto fail = [&](std::string msg) {
        out.ok = false;
        out.violations.push_back(std::move(msg));
    };
    if (inst.side < 2) {
        fail("grid side must be at least 2");
        return out;
    }
    bool has_three = false;
    for (std::size_t k = 0; k < inst.constraints.size(); k++) {
        const auto &c = inst.constraints[k];
        std::string tag = "constraint " + std::to_string(k) + ": ";
        if (c.row < 0 || c.col < 0 || c.row + 1 >= inst.side || c.col + 1 >= inst.side) {
            fail(tag + "plaquette " + point_text({c.row, c.col}) + " outside the grid");
            continue;
        }
        if (c.corners.size() < 2 || c.corners.size() > 3) {
            fail(tag + "needs 2 or 3 corners, has " + std::to_string(c.corners.size()));
        }
        has_three |= c.corners.size() == 3;
        for (std::size_t a = 0; a < c.corners.size(); a++) {
            GridPoint p = c.corners[a].point;
            if (!on_grid(inst, p)) {
                fail(tag + "corner " + point_text(p) + " outside the grid");
            } else if (p.row - c.row < 0 || p.row - c.row > 1 || p.col - c.col < 0 || p.col - c.col > 1) {
                fail(tag + "corner " + point_text(p) + " not on plaquette " + point_text({c.row, c.col}));
            }
            for (std::size_t b = 0; b < a; b++) {
                if (c.corners[b].point == p) {
                    fail(tag + "corner " + point_text(p) + " repeated");
                }
            }
        }
    }
    if (!has_three) {
        fail("no constraint uses three corners");
    }
    return out;
}

CnfFormula lattice_to_cnf(const LatticeInstance &inst) {
    require_valid(inst);
    std::vector<Clause> clauses;
    for (const auto &c : inst.constraints) {
        clauses.push_back(clause_of(c, nullptr, inst.side));
    }
    return CnfFormula(inst.num_points(), clauses);
}

CompactLatticeCnf compact_lattice_cnf(const LatticeInstance &inst) {
    require_valid(inst);
    CompactLatticeCnf out;
    for (const auto &c : inst.constraints) {
        for (const auto &lit : c.corners) {
            out.points.push_back(lit.point);
        }
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    std::map<GridPoint, int> index;
    for (std::size_t k = 0; k < out.points.size(); k++) {
        index[out.points[k]] = (int)k + 1;
    }
    std::vector<Clause> clauses;
    for (const auto &c : inst.constraints) {
        clauses.push_back(clause_of(c, &index, inst.side));
    }
    out.formula = CnfFormula((int)out.points.size(), clauses);
    return out;
}

LatticeReduction reduce_3sat_to_lattice(const CnfFormula &formula) {
    int slack = 0;
    CnfFormula padded = pad_to_three(formula, &slack);
    if (padded.num_clauses() == 0) {
        // Nothing to encode: one satisfiable 3-corner plaquette.
        LatticeReduction out;
        out.instance.side = 2;
        out.instance.constraints.push_back({0, 0, {{{0, 0}, true}, {{0, 1}, true}, {{1, 0}, true}}});
        out.artifacts.padded = padded;
        return out;
    }
    LatticeReduction out = Reducer(padded).run();
    out.artifacts.padded = padded;
    out.artifacts.slack_variables = slack;
    return out;
}

EquisatReport equisat_check(const CnfFormula &formula, const LatticeInstance &inst, int max_variables) {
    CompactLatticeCnf lat = compact_lattice_cnf(inst);
    if (lat.formula.num_vars() > max_variables) {
        throw std::length_error("lattice side has " + std::to_string(lat.formula.num_vars()) +
                                " constrained points, cap is " + std::to_string(max_variables));
    }
    EquisatReport out;
    out.source = dpll_solve(formula).verdict;
    out.lattice = dpll_solve(lat.formula).verdict;
    out.agree = out.source == out.lattice;
    out.lattice_variables = lat.formula.num_vars();
    out.lattice_clauses = lat.formula.num_clauses();
    return out;
}

LatticeInstance random_lattice_instance(std::uint64_t seed, int side, double density) {
    if (side < 2) {
        throw std::invalid_argument("grid side must be at least 2");
    }
    if (!(density > 0 && density <= 1)) {
        throw std::invalid_argument("density must lie in (0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    LatticeInstance inst;
    inst.side = side;
    bool has_three = false;
    for (int r = 0; r + 1 < side; r++) {
        for (int c = 0; c + 1 < side; c++) {
            if (coin(rng) >= density) {
                continue;
            }
            auto corners = kCorners;
            std::shuffle(corners.begin(), corners.end(), rng);
            int count = 2 + (int)(rng() % 2);
            std::sort(corners.begin(), corners.begin() + count);
            PlaquetteConstraint pc{r, c, {}};
            for (int k = 0; k < count; k++) {
                pc.corners.push_back({corner_point(r, c, corners[k]), (rng() & 1) != 0});
            }
            has_three |= count == 3;
            inst.constraints.push_back(std::move(pc));
        }
    }
    if (!has_three) {
        if (inst.constraints.empty()) {
            inst.constraints.push_back({0, 0, {}});
        }
        auto &first = inst.constraints.front();
        for (Corner k : kCorners) {
            GridPoint p = corner_point(first.row, first.col, k);
            bool used = std::any_of(first.corners.begin(), first.corners.end(),
                                    [&](const CornerLiteral &lit) { return lit.point == p; });
            if (!used && first.corners.size() < 3) {
                first.corners.push_back({p, (rng() & 1) != 0});
            }
        }
    }
    return inst;
}

std::string lattice_to_json(const LatticeInstance &inst) {
    using nlohmann::json;
    json cons = json::array();
    for (const auto &c : inst.constraints) {
        json corners = json::array();
        for (const auto &lit : c.corners) {
            json j{{"row", lit.point.row}, {"col", lit.point.col}, {"positive", lit.positive}};
            for (Corner k : kCorners) {
                if (corner_point(c.row, c.col, k) == lit.point) {
                    j["corner"] = corner_name(k);
                }
            }
            corners.push_back(j);
        }
        cons.push_back(json{{"row", c.row}, {"col", c.col}, {"corners", corners}});
    }
    return json{{"side", inst.side}, {"constraints", cons}}.dump();
}

LatticeInstance lattice_from_json(const std::string &text) {
    using nlohmann::json;
    LatticeInstance inst;
    try {
        json j = json::parse(text);
        inst.side = j.at("side").get<int>();
        for (const auto &jc : j.at("constraints")) {
            PlaquetteConstraint c{jc.at("row").get<int>(), jc.at("col").get<int>(), {}};
            for (const auto &jl : jc.at("corners")) {
                CornerLiteral lit;
                lit.positive = jl.at("positive").get<bool>();
                if (jl.contains("row")) {
                    lit.point = {jl.at("row").get<int>(), jl.at("col").get<int>()};
                } else {
                    std::string name = jl.at("corner").get<std::string>();
                    auto it = std::find_if(kCorners.begin(), kCorners.end(),
                                           [&](Corner k) { return corner_name(k) == name; });
                    if (it == kCorners.end()) {
                        throw std::invalid_argument("unknown corner " + name);
                    }
                    lit.point = corner_point(c.row, c.col, *it);
                }
                c.corners.push_back(lit);
            }
            inst.constraints.push_back(std::move(c));
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed lattice JSON: ") + e.what());
    }
    return inst;
}

}  // namespace hybridts
