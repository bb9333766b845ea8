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

#ifndef HYBRIDTS_SIA_H
#define HYBRIDTS_SIA_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hybridts/formula.h"

namespace hybridts {

/// Advice bits, read in order; one bit per guessed variable.
using Advice = std::vector<bool>;
/// Parses a string of '0' and '1'. Throws std::invalid_argument otherwise.
Advice parse_advice(const std::string &bits);
std::string advice_text(const Advice &advice);

/// Status code stored in the flag field of a memory cell. Anything but
/// kRunning ends the computation; later blocks copy their input.
enum class SiaStatus : int { kRunning = 0, kContradiction = 1, kOutOfAdvice = 2, kSatisfied = 3 };
std::string status_name(SiaStatus s);

/// Result of s-implication with advice. Contradiction and satisfied are
/// zero-children outcomes; out of advice means the node has two children.
struct SiaOutcome {
    SiaStatus status = SiaStatus::kRunning;
    /// Variable that needed a guess (out of advice only; 0 when unknown).
    int at_variable = 0;
    int advice_consumed = 0;
    PartialAssignment assignment;

    bool two_children() const {
        return status == SiaStatus::kOutOfAdvice;
    }
    int flag() const {
        return (int)status;
    }
};

/// Walks variables 1..n in index order. Stops on a contradicted or satisfied
/// restriction; assigns s-implied variables (true when both polarities are
/// implied); otherwise consumes the next advice bit, or stops with two
/// children when the advice is used up. A full assignment ends with the
/// verdict of the formula on it.
SiaOutcome sia_reference(const CnfFormula &formula, const Advice &advice, int s);

/// Block geometry: l = 2^k blocks of w variables (trailing slots beyond n are
/// skipped). A cell holds w values, a cursor and a two-bit flag.
struct SiaLayout {
    int n = 0;
    int w = 1;
    int blocks = 1;
    int k = 0;
    int cursor_bits = 1;
    int flag_bits = 2;

    int cell_bits() const {
        return w + cursor_bits + flag_bits;
    }
};

/// Throws std::invalid_argument when w < 1 or the index width exceeds w.
SiaLayout make_sia_layout(const CnfFormula &formula, int w);

using Cell = std::vector<std::uint8_t>;

struct CellFields {
    std::vector<bool> values;
    int cursor = 0;
    SiaStatus status = SiaStatus::kRunning;
};

Cell encode_cell(const SiaLayout &layout, const CellFields &fields);
CellFields decode_cell(const SiaLayout &layout, const Cell &cell);

/// Per-call work, for the resource cross-check.
struct BlockStats {
    /// Variables decided (each one an s-implication test).
    std::int64_t variable_steps = 0;
};

/// SIAB_block (1-based): values of variables (block-1)w+1 .. block*w from the
/// previous block's values, the cursor and the flag. Reads only the formula
/// and the previous block. Identity on a stopped input.
Cell siab_block(const CnfFormula &formula, const SiaLayout &layout, int block, const Cell &input, const Advice &advice,
                int s, BlockStats *stats = nullptr);

struct LocalityReport {
    int checked = 0;
    int mismatches = 0;
};

/// Compares s-implication of the frontier variable computed from a full prefix
/// with the one computed from the last w values only, on random
/// non-contradicted prefixes. Throws std::invalid_argument when the index
/// width exceeds w.
LocalityReport locality_check(const CnfFormula &formula, int w, int s, int samples, std::uint64_t seed);

struct PebbleStep {
    int block = 1;
    /// Cell indices; -1 is the input cell.
    int source = -1;
    int target = 0;
};

/// Bennett schedule over 2^k blocks into cell k using cells 0..k-1: 3^k steps.
std::vector<PebbleStep> siar_schedule(int k);
/// One line per step: "M[t] ^= SIAB_a(M[s])".
std::string schedule_text(const std::vector<PebbleStep> &schedule);

/// Memory cells M[-1..k], stored at index cell + 1.
struct SiarMemory {
    std::vector<Cell> cells;

    Cell &at(int index) {
        return cells[index + 1];
    }
    const Cell &at(int index) const {
        return cells[index + 1];
    }
    bool all_zero(int from, int to) const;
};

SiarMemory blank_memory(const SiaLayout &layout);

struct SiarRun {
    SiaLayout layout;
    std::vector<PebbleStep> schedule;
    SiarMemory memory;
    SiaOutcome outcome;
    /// Decoded M[k]: the values of the block where the walk stopped.
    CellFields final_cell;
    std::int64_t calls = 0;
    std::int64_t variable_steps = 0;
    /// Largest number of pebbled intermediate cells (0..k-1) at once.
    int peak_live = 0;
    /// Largest number of nonzero intermediate cells at once.
    int peak_nonzero = 0;
};

/// Applies every step M[t] ^= SIAB_a(M[s]) to `memory`; returns the calls made.
std::int64_t run_schedule(const CnfFormula &formula, const SiaLayout &layout, const std::vector<PebbleStep> &schedule,
                          const Advice &advice, int s, SiarMemory &memory, SiarRun *audit = nullptr);

/// Runs the schedule from zeroed cells and decodes M[k]. Throws
/// std::logic_error if an intermediate cell is left nonzero. The outcome
/// carries status and advice consumed; its assignment is left unset and
/// at_variable is 0, since a cell only holds one block.
SiarRun siar_execute(const CnfFormula &formula, const Advice &advice, int w, int s);

struct ResourceAccount {
    int n = 0, w = 0, s = 0, d = 0;
    int blocks = 0, k = 0;
    int cell_bits = 0;
    int cursor_bits = 0;
    int flag_bits = 0;
    /// k cells of intermediate results.
    int pebble_bits = 0;
    /// Block ancillas, itemized.
    std::vector<std::pair<std::string, int>> ancillas;
    int ancilla_bits = 0;
    /// Input, output, pebbles and ancillas.
    int space = 0;
    /// w * d^s * ceil(log2 log2 n) per block call.
    double block_time = 0;
    std::int64_t schedule_length = 0;
    double time = 0;
};

/// Throws std::invalid_argument on non-positive n, w, s or d.
ResourceAccount resource_account(int n, int w, int s, int d);

/// Largest number of clauses sharing a variable.
int formula_degree(const CnfFormula &formula);

}  // namespace hybridts

#endif
