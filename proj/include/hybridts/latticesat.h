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

#ifndef HYBRIDTS_LATTICESAT_H
#define HYBRIDTS_LATTICESAT_H

#include <cstdint>
#include <string>
#include <vector>

#include "hybridts/formula.h"
#include "hybridts/treesearch.h"

namespace hybridts {

/// A grid corner. Corner (row, col) is variable row * side + col + 1.
struct GridPoint {
    int row = 0;
    int col = 0;

    bool operator==(const GridPoint &other) const = default;
    auto operator<=>(const GridPoint &other) const = default;
};

enum class Corner { kNW, kNE, kSW, kSE };
std::string corner_name(Corner c);
/// Point of a corner of plaquette (row, col): NW is (row, col), SE (row+1, col+1).
GridPoint corner_point(int row, int col, Corner c);

struct CornerLiteral {
    GridPoint point;
    bool positive = true;

    bool operator==(const CornerLiteral &other) const = default;
};

/// Clause on plaquette (row, col); its corners are absolute grid points.
struct PlaquetteConstraint {
    int row = 0;
    int col = 0;
    std::vector<CornerLiteral> corners;

    bool operator==(const PlaquetteConstraint &other) const = default;
};

struct LatticeInstance {
    int side = 2;
    std::vector<PlaquetteConstraint> constraints;

    int num_points() const {
        return side * side;
    }
    int variable_of(GridPoint p) const {
        return p.row * side + p.col + 1;
    }
    bool operator==(const LatticeInstance &other) const = default;
};

struct LatticeValidation {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Structural checks: plaquettes and corners inside the grid, corners on
/// their plaquette and distinct, 2 or 3 corners, at least one 3-corner
/// constraint. The grid is side x side over side^2 variables, so it always
/// fits the square of side sqrt(n).
LatticeValidation validate_lattice(const LatticeInstance &inst);

/// One clause per constraint over side^2 variables in row-major order.
/// Throws std::invalid_argument on an invalid instance.
CnfFormula lattice_to_cnf(const LatticeInstance &inst);

/// Same clauses over the constrained points only, renumbered in row-major
/// order; points[v - 1] is the point of variable v.
struct CompactLatticeCnf {
    CnfFormula formula;
    std::vector<GridPoint> points;
};
CompactLatticeCnf compact_lattice_cnf(const LatticeInstance &inst);

/// Role of an equality chain in the reduction.
enum class ChainRole {
    /// Horizontal bus carrying every copy of a variable.
    kCopy,
    /// Drop from a bus to the west corner of a clause plaquette.
    kFeedWest,
    /// Drop from a bus to the east corner of a clause plaquette.
    kFeedEast,
    /// Fresh variable joining the first and third clause pieces.
    kSplit,
    /// Fresh variable joining the second and third clause pieces.
    kSplitBack,
};
std::string chain_role_name(ChainRole r);

/// A path of points forced equal by pairs of 2-corner constraints.
struct EqualityChain {
    ChainRole role = ChainRole::kCopy;
    /// Variable of the padded formula (0 for split chains).
    int var = 0;
    /// Clause index, 1-based (0 for copy buses).
    int clause = 0;
    std::vector<GridPoint> points;
};

/// Copy of variable `var` dedicated to clause `clause` (both 1-based).
struct CopyPlacement {
    int var = 0;
    int clause = 0;
    GridPoint point;
};

/// A drop crossing a bus, rewritten inside one 4x4 tile.
struct CrossingRewrite {
    int tile_row = 0;
    int tile_col = 0;
    int bus_var = 0;
    int drop_var = 0;
    int clause = 0;
};

struct ReductionArtifacts {
    /// The input padded to exactly three literals per clause.
    CnfFormula padded;
    int slack_variables = 0;
    std::vector<CopyPlacement> placement;
    std::vector<EqualityChain> chains;
    /// In sweep order: lowest tile row first, then lowest tile column.
    std::vector<CrossingRewrite> crossings;
    /// side / (n * L) over the padded formula.
    double side_per_nl = 0;
};

struct LatticeReduction {
    LatticeInstance instance;
    ReductionArtifacts artifacts;
};

/// 3-SAT to Lattice SAT. Clauses with one or two literals are padded with
/// fresh slack variables first. Throws std::invalid_argument on a clause with
/// more than three literals or an empty clause.
LatticeReduction reduce_3sat_to_lattice(const CnfFormula &formula);

struct EquisatReport {
    bool agree = false;
    SolveVerdict source = SolveVerdict::kUnsat;
    SolveVerdict lattice = SolveVerdict::kUnsat;
    int lattice_variables = 0;
    int lattice_clauses = 0;
};

/// DPLL on both sides (the lattice side over its constrained points).
/// Throws std::length_error when the lattice side exceeds max_variables.
EquisatReport equisat_check(const CnfFormula &formula, const LatticeInstance &inst, int max_variables = 200000);

/// Each plaquette is constrained with probability `density` by 2 or 3
/// distinct corners with random signs. Always valid. Throws
/// std::invalid_argument unless side >= 2 and density is in (0, 1].
LatticeInstance random_lattice_instance(std::uint64_t seed, int side, double density);

/// JSON with "side" and "constraints"; each corner carries row, col, corner
/// name and sign. Parsing accepts either row/col or a corner name.
std::string lattice_to_json(const LatticeInstance &inst);
LatticeInstance lattice_from_json(const std::string &text);

}  // namespace hybridts

#endif
