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

#include "hybridts/sia.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace hybridts {

namespace {

int bits_for(int value) {
    int b = 1;
    while ((1LL << b) <= value) {
        b++;
    }
    return b;
}

int max_var(const Clause &c) {
    return c.empty() ? 0 : c.back().var;
}

// Clauses that still matter when deciding variable j: those reaching j or beyond.
CnfFormula tail_from(const CnfFormula &f, int j) {
    std::vector<Clause> keep;
    for (const auto &c : f.clauses()) {
        if (max_var(c) >= j) {
            keep.push_back(c);
        }
    }
    return CnfFormula(f.num_vars(), std::move(keep));
}

bool has_true_literal(const Clause &c, const PartialAssignment &a) {
    for (const auto &lit : c) {
        if (a.literal_status(lit) == 1) {
            return true;
        }
    }
    return false;
}

bool falsified(const Clause &c, const PartialAssignment &a) {
    for (const auto &lit : c) {
        if (a.literal_status(lit) != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Advice parse_advice(const std::string &bits) {
    Advice out;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw std::invalid_argument("advice must be a string of 0 and 1");
        }
        out.push_back(ch == '1');
    }
    return out;
}

std::string advice_text(const Advice &advice) {
    std::string out;
    for (bool b : advice) {
        out += b ? '1' : '0';
    }
    return out;
}

std::string status_name(SiaStatus s) {
    switch (s) {
        case SiaStatus::kRunning:
            return "running";
        case SiaStatus::kContradiction:
            return "contradiction";
        case SiaStatus::kOutOfAdvice:
            return "two_children";
        case SiaStatus::kSatisfied:
            return "satisfied";
    }
    return "unknown";
}

SiaOutcome sia_reference(const CnfFormula &formula, const Advice &advice, int s) {
    int n = formula.num_vars();
    SiaOutcome out;
    out.assignment = PartialAssignment(n);
    PartialAssignment &a = out.assignment;
    for (int i = 1; i <= n; i++) {
        Verdict v = evaluate_predicate(formula, a);
        if (v != Verdict::kUndetermined) {
            out.status = v == Verdict::kSatisfied ? SiaStatus::kSatisfied : SiaStatus::kContradiction;
            return out;
        }
        Implication imp = s_implied(formula, a, i, s);
        if (imp != Implication::kFree) {
            a.set(i, imp != Implication::kForcedFalse);
        } else if (out.advice_consumed == (int)advice.size()) {
            out.status = SiaStatus::kOutOfAdvice;
            out.at_variable = i;
            return out;
        } else {
            a.set(i, advice[out.advice_consumed++]);
        }
    }
    out.status = evaluate_predicate(formula, a) == Verdict::kSatisfied ? SiaStatus::kSatisfied
                                                                        : SiaStatus::kContradiction;
    return out;
}

SiaLayout make_sia_layout(const CnfFormula &formula, int w) {
    if (w < 1) {
        throw std::invalid_argument("block width must be positive");
    }
    if (index_width(formula) > w) {
        throw std::invalid_argument("index width " + std::to_string(index_width(formula)) + " exceeds block width " +
                                    std::to_string(w));
    }
    SiaLayout L;
    L.n = formula.num_vars();
    L.w = w;
    int needed = std::max(1, (L.n + w - 1) / w);
    while (L.blocks < needed) {
        L.blocks *= 2;
        L.k++;
    }
    L.cursor_bits = bits_for(L.n);
    return L;
}

Cell encode_cell(const SiaLayout &layout, const CellFields &fields) {
    Cell c(layout.cell_bits(), 0);
    for (int b = 0; b < layout.w && b < (int)fields.values.size(); b++) {
        c[b] = fields.values[b];
    }
    for (int b = 0; b < layout.cursor_bits; b++) {
        c[layout.w + b] = (fields.cursor >> b) & 1;
    }
    for (int b = 0; b < layout.flag_bits; b++) {
        c[layout.w + layout.cursor_bits + b] = ((int)fields.status >> b) & 1;
    }
    return c;
}

CellFields decode_cell(const SiaLayout &layout, const Cell &cell) {
    CellFields f;
    f.values.assign(cell.begin(), cell.begin() + layout.w);
    for (int b = 0; b < layout.cursor_bits; b++) {
        f.cursor |= cell[layout.w + b] << b;
    }
    int code = 0;
    for (int b = 0; b < layout.flag_bits; b++) {
        code |= cell[layout.w + layout.cursor_bits + b] << b;
    }
    f.status = (SiaStatus)code;
    return f;
}

Cell siab_block(const CnfFormula &formula, const SiaLayout &layout, int block, const Cell &input, const Advice &advice,
                int s, BlockStats *stats) {
    if (block < 1 || block > layout.blocks) {
        throw std::out_of_range("block index outside 1.." + std::to_string(layout.blocks));
    }
    CellFields in = decode_cell(layout, input);
    if (in.status != SiaStatus::kRunning) {
        return input;
    }
    int n = layout.n, w = layout.w;
    int first = (block - 1) * w + 1;
    CellFields out;
    out.values.assign(w, false);
    out.cursor = in.cursor;
    // Known values: the previous block only.
    PartialAssignment window(n);
    if (block > 1) {
        for (int b = 0; b < w; b++) {
            int v = first - w + b;
            if (v >= 1 && v <= n) {
                window.set(v, in.values[b]);
            }
        }
    } else if (formula.has_empty_clause()) {
        out.status = SiaStatus::kContradiction;
    }
    int last = std::min(block * w, n);
    for (int j = first; j <= last && out.status == SiaStatus::kRunning; j++) {
        CnfFormula tail = tail_from(formula, j);
        bool all_true = true;
        for (const auto &c : tail.clauses()) {
            all_true = all_true && has_true_literal(c, window);
        }
        if (all_true) {
            out.status = SiaStatus::kSatisfied;
            break;
        }
        bool value;
        Implication imp = s_implied(tail, window, j, s);
        if (imp != Implication::kFree) {
            value = imp != Implication::kForcedFalse;
        } else if (out.cursor == (int)advice.size()) {
            out.status = SiaStatus::kOutOfAdvice;
            break;
        } else {
            value = advice[out.cursor++];
        }
        window.set(j, value);
        out.values[j - first] = value;
        if (stats) {
            stats->variable_steps++;
        }
        // A clause is decided when its last variable is.
        for (const auto &c : tail.clauses()) {
            if (max_var(c) == j && falsified(c, window)) {
                out.status = SiaStatus::kContradiction;
                break;
            }
        }
    }
    bool holds_last = first <= n && n <= block * w;
    if (out.status == SiaStatus::kRunning && (holds_last || (n == 0 && block == 1))) {
        out.status = SiaStatus::kSatisfied;
    }
    return encode_cell(layout, out);
}

LocalityReport locality_check(const CnfFormula &formula, int w, int s, int samples, std::uint64_t seed) {
    if (index_width(formula) > w) {
        throw std::invalid_argument("locality needs index width at most w");
    }
    LocalityReport r;
    int n = formula.num_vars();
    if (n == 0) {
        return r;
    }
    std::mt19937_64 rng(seed);
    int attempts = 0;
    while (r.checked < samples && attempts++ < 50 * samples) {
        int j = 1 + (int)(rng() % n);
        PartialAssignment prefix(n);
        for (int v = 1; v < j; v++) {
            prefix.set(v, rng() & 1);
        }
        if (evaluate_predicate(formula, prefix) == Verdict::kContradiction) {
            continue;
        }
        PartialAssignment window(n);
        for (int v = std::max(1, j - w); v < j; v++) {
            window.set(v, prefix.get(v) == Value::kTrue);
        }
        Implication full = s_implied(formula, prefix, j, s);
        Implication local = s_implied(tail_from(formula, j), window, j, s);
        r.checked++;
        r.mismatches += full != local;
    }
    return r;
}

std::vector<PebbleStep> siar_schedule(int k) {
    if (k < 0) {
        throw std::invalid_argument("pebble count must be non-negative");
    }
    std::vector<PebbleStep> out;
    auto rec = [&](auto &&self, int a, int s, int t, int p) -> void {
        if (p == 0) {
            out.push_back({a, s, t});
            return;
        }
        int r = p - 1;
        int b = a + (1 << r);
        self(self, a, s, r, p - 1);
        self(self, b, r, t, p - 1);
        self(self, a, s, r, p - 1);
    };
    rec(rec, 1, -1, k, k);
    return out;
}

std::string schedule_text(const std::vector<PebbleStep> &schedule) {
    std::ostringstream out;
    for (const auto &st : schedule) {
        out << "M[" << st.target << "] ^= SIAB_" << st.block << "(M[" << st.source << "])\n";
    }
    return out.str();
}

bool SiarMemory::all_zero(int from, int to) const {
    for (int i = from; i <= to; i++) {
        const Cell &c = at(i);
        if (std::any_of(c.begin(), c.end(), [](std::uint8_t b) { return b != 0; })) {
            return false;
        }
    }
    return true;
}

SiarMemory blank_memory(const SiaLayout &layout) {
    SiarMemory m;
    m.cells.assign(layout.k + 2, Cell(layout.cell_bits(), 0));
    return m;
}

std::int64_t run_schedule(const CnfFormula &formula, const SiaLayout &layout, const std::vector<PebbleStep> &schedule,
                          const Advice &advice, int s, SiarMemory &memory, SiarRun *audit) {
    std::vector<bool> pebbled(layout.k, false);
    BlockStats stats;
    std::int64_t calls = 0;
    for (const auto &st : schedule) {
        if (st.source < -1 || st.source > layout.k || st.target < 0 || st.target > layout.k) {
            throw std::out_of_range("schedule names a cell outside M[-1..k]");
        }
        Cell value = siab_block(formula, layout, st.block, memory.at(st.source), advice, s, &stats);
        Cell &target = memory.at(st.target);
        for (std::size_t b = 0; b < target.size(); b++) {
            target[b] ^= value[b];
        }
        calls++;
        if (audit) {
            if (st.target < layout.k) {
                pebbled[st.target] = !pebbled[st.target];
            }
            int live = (int)std::count(pebbled.begin(), pebbled.end(), true);
            int nonzero = 0;
            for (int c = 0; c < layout.k; c++) {
                nonzero += !memory.all_zero(c, c);
            }
            audit->peak_live = std::max(audit->peak_live, live);
            audit->peak_nonzero = std::max(audit->peak_nonzero, nonzero);
        }
    }
    if (audit) {
        audit->calls += calls;
        audit->variable_steps += stats.variable_steps;
    }
    return calls;
}

SiarRun siar_execute(const CnfFormula &formula, const Advice &advice, int w, int s) {
    SiarRun run;
    run.layout = make_sia_layout(formula, w);
    run.schedule = siar_schedule(run.layout.k);
    run.memory = blank_memory(run.layout);
    run_schedule(formula, run.layout, run.schedule, advice, s, run.memory, &run);
    if (!run.memory.all_zero(0, run.layout.k - 1)) {
        throw std::logic_error("pebbling left an intermediate cell nonzero");
    }
    run.final_cell = decode_cell(run.layout, run.memory.at(run.layout.k));
    run.outcome.status = run.final_cell.status;
    run.outcome.advice_consumed = run.final_cell.cursor;
    run.outcome.assignment = PartialAssignment(formula.num_vars());
    return run;
}

ResourceAccount resource_account(int n, int w, int s, int d) {
    if (n < 1 || w < 1 || s < 1 || d < 1) {
        throw std::invalid_argument("resource account needs positive n, w, s and d");
    }
    ResourceAccount r;
    r.n = n;
    r.w = w;
    r.s = s;
    r.d = d;
    int needed = std::max(1, (n + w - 1) / w);
    r.blocks = 1;
    while (r.blocks < needed) {
        r.blocks *= 2;
        r.k++;
    }
    r.cursor_bits = bits_for(n);
    r.flag_bits = 2;
    r.cell_bits = w + r.cursor_bits + r.flag_bits;
    r.pebble_bits = r.k * r.cell_bits;
    double subsets = std::pow((double)d, s);
    int subset_bits = bits_for((int)std::min(subsets, 1e9));
    // Registers of the block circuit for 3-literal clauses.
    r.ancillas = {
        {"subset assignment", 3 * s},
        {"variable index", bits_for(n)},
        {"subset verdict", 2},
        {"agreement counters", 2 * (3 * s + 1)},
        {"implication verdict", 2},
        {"subset counter", subset_bits},
        {"decision bits", 2},
        {"block buffer", w},
    };
    for (const auto &[name, bits] : r.ancillas) {
        r.ancilla_bits += bits;
    }
    r.space = 2 * r.cell_bits + r.pebble_bits + r.ancilla_bits;
    double loglog = n >= 4 ? std::ceil(std::log2(std::log2((double)n))) : 1.0;
    r.block_time = w * subsets * std::max(1.0, loglog);
    r.schedule_length = 1;
    for (int i = 0; i < r.k; i++) {
        r.schedule_length *= 3;
    }
    r.time = (double)r.schedule_length * r.block_time;
    return r;
}

int formula_degree(const CnfFormula &formula) {
    std::vector<int> count(formula.num_vars() + 1, 0);
    for (const auto &c : formula.clauses()) {
        for (const auto &lit : c) {
            count[lit.var]++;
        }
    }
    return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

}  // namespace hybridts
