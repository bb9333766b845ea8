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

#include "hybridts/formula.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hybridts {

int PartialAssignment::num_set() const {
    int n = 0;
    for (Value v : values_) {
        n += v != Value::kUnset;
    }
    return n;
}

std::string PartialAssignment::str() const {
    std::string out;
    out.reserve(values_.size());
    for (Value v : values_) {
        out.push_back(v == Value::kUnset ? '*' : v == Value::kTrue ? '1' : '0');
    }
    return out;
}

CnfFormula::CnfFormula(int num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
    if (num_vars < 0) {
        throw std::invalid_argument("negative variable count");
    }
    std::set<Clause> seen;
    for (auto &c : clauses) {
        for (const auto &lit : c) {
            if (lit.var < 1 || lit.var > num_vars) {
                throw std::invalid_argument(
                    "literal " + std::to_string(lit.dimacs()) + " outside 1.." + std::to_string(num_vars));
            }
        }
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        bool tautology = false;
        for (size_t k = 1; k < c.size(); k++) {
            tautology |= c[k].var == c[k - 1].var;
        }
        if (tautology || !seen.insert(c).second) {
            continue;
        }
        clauses_.push_back(std::move(c));
    }
}

CnfFormula CnfFormula::from_ints(int num_vars, const std::vector<std::vector<int>> &clauses) {
    std::vector<Clause> out;
    for (const auto &c : clauses) {
        Clause clause;
        for (int x : c) {
            if (x == 0) {
                throw std::invalid_argument("zero literal");
            }
            clause.push_back({x < 0 ? -x : x, x > 0});
        }
        out.push_back(std::move(clause));
    }
    return CnfFormula(num_vars, std::move(out));
}

bool CnfFormula::has_empty_clause() const {
    return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause &c) {
        return c.empty();
    });
}

int CnfFormula::max_clause_size() const {
    int k = 0;
    for (const auto &c : clauses_) {
        k = std::max(k, (int)c.size());
    }
    return k;
}

bool CnfFormula::satisfied_by(const std::vector<bool> &full) const {
    for (const auto &c : clauses_) {
        bool sat = false;
        for (const auto &lit : c) {
            sat |= full[lit.var - 1] == lit.positive;
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

bool CnfFormula::satisfied_by(const PartialAssignment &a) const {
    for (const auto &c : clauses_) {
        bool sat = false;
        for (const auto &lit : c) {
            sat |= a.literal_status(lit) == 1;
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

CnfFormula restrict(const CnfFormula &formula, const PartialAssignment &a) {
    std::vector<Clause> out;
    out.reserve(formula.num_clauses());
    for (const auto &c : formula.clauses()) {
        Clause kept;
        bool sat = false;
        for (const auto &lit : c) {
            int st = a.literal_status(lit);
            if (st == 1) {
                sat = true;
                break;
            }
            if (st == -1) {
                kept.push_back(lit);
            }
        }
        if (!sat) {
            out.push_back(std::move(kept));
        }
    }
    return CnfFormula(formula.num_vars(), std::move(out));
}

Verdict evaluate_predicate(const CnfFormula &formula, const PartialAssignment &a) {
    bool all_sat = true;
    for (const auto &c : formula.clauses()) {
        bool sat = false;
        bool open = false;
        for (const auto &lit : c) {
            int st = a.literal_status(lit);
            sat |= st == 1;
            open |= st == -1;
        }
        if (!sat && !open) {
            return Verdict::kContradiction;
        }
        all_sat &= sat;
    }
    return all_sat ? Verdict::kSatisfied : Verdict::kUndetermined;
}

namespace {

std::vector<int> resolve_order(int num_vars, std::span<const int> order) {
    if (!order.empty()) {
        if ((int)order.size() != num_vars) {
            throw std::invalid_argument("variable order has the wrong length");
        }
        return {order.begin(), order.end()};
    }
    std::vector<int> out(num_vars);
    for (int k = 0; k < num_vars; k++) {
        out[k] = k + 1;
    }
    return out;
}

}  // namespace

std::optional<ForcedLiteral> unit_rule(
    const CnfFormula &formula, const PartialAssignment &a, std::span<const int> order) {
    int n = formula.num_vars();
    // 1 = positive singleton, 2 = negative singleton.
    std::vector<std::uint8_t> units(n + 1, 0);
    for (const auto &c : formula.clauses()) {
        const Literal *open = nullptr;
        int open_count = 0;
        bool sat = false;
        for (const auto &lit : c) {
            int st = a.literal_status(lit);
            if (st == 1) {
                sat = true;
                break;
            }
            if (st == -1) {
                open = &lit;
                open_count++;
            }
        }
        if (sat) {
            continue;
        }
        if (open_count == 0) {
            throw std::logic_error("unit rule applied to a contradicted restriction");
        }
        if (open_count == 1) {
            units[open->var] |= open->positive ? 1 : 2;
        }
    }
    for (int v : resolve_order(n, order)) {
        if (units[v]) {
            return ForcedLiteral{v, (units[v] & 1) != 0};
        }
    }
    return std::nullopt;
}

std::optional<ForcedLiteral> pure_literal_rule(
    const CnfFormula &formula, const PartialAssignment &a, std::span<const int> order) {
    int n = formula.num_vars();
    std::vector<std::uint8_t> seen(n + 1, 0);
    for (const auto &c : formula.clauses()) {
        bool sat = false;
        for (const auto &lit : c) {
            sat |= a.literal_status(lit) == 1;
        }
        if (sat) {
            continue;
        }
        for (const auto &lit : c) {
            if (!a.is_set(lit.var)) {
                seen[lit.var] |= lit.positive ? 1 : 2;
            }
        }
    }
    for (int v : resolve_order(n, order)) {
        if (a.is_set(v) || seen[v] == 3) {
            continue;
        }
        return ForcedLiteral{v, seen[v] != 2};
    }
    return std::nullopt;
}

namespace {

// Connected clause sets of size at most s, each visited once.
class SubsetWalker {
   public:
    SubsetWalker(const std::vector<Clause> &clauses, int num_vars, int s)
        : clauses_(clauses), s_(s), occurrences_(num_vars + 1) {
        for (int k = 0; k < (int)clauses.size(); k++) {
            for (const auto &lit : clauses[k]) {
                occurrences_[lit.var].push_back(k);
            }
        }
    }

    template <typename Callback>
    bool walk_from(int seed, Callback &&callback) {
        std::vector<int> current{seed};
        return grow(current, callback);
    }

   private:
    template <typename Callback>
    bool grow(std::vector<int> &current, Callback &callback) {
        std::vector<int> key = current;
        std::sort(key.begin(), key.end());
        if (!visited_.insert(key).second) {
            return false;
        }
        if (callback(current)) {
            return true;
        }
        if ((int)current.size() >= s_) {
            return false;
        }
        std::set<int> neighbours;
        for (int c : current) {
            for (const auto &lit : clauses_[c]) {
                for (int d : occurrences_[lit.var]) {
                    if (std::find(current.begin(), current.end(), d) == current.end()) {
                        neighbours.insert(d);
                    }
                }
            }
        }
        for (int d : neighbours) {
            current.push_back(d);
            bool stop = grow(current, callback);
            current.pop_back();
            if (stop) {
                return true;
            }
        }
        return false;
    }

    const std::vector<Clause> &clauses_;
    int s_;
    std::vector<std::vector<int>> occurrences_;
    std::set<std::vector<int>> visited_;
};

struct SubsetOutcome {
    bool satisfiable = false;
    bool can_be_true = false;
    bool can_be_false = false;
};

SubsetOutcome enumerate_subset(const std::vector<Clause> &clauses, const std::vector<int> &subset, int var) {
    std::vector<int> vars;
    for (int c : subset) {
        for (const auto &lit : clauses[c]) {
            vars.push_back(lit.var);
        }
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    int target = (int)(std::find(vars.begin(), vars.end(), var) - vars.begin());
    SubsetOutcome out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()); bits++) {
        bool ok = true;
        for (int c : subset) {
            bool sat = false;
            for (const auto &lit : clauses[c]) {
                int pos = (int)(std::lower_bound(vars.begin(), vars.end(), lit.var) - vars.begin());
                sat |= (((bits >> pos) & 1) != 0) == lit.positive;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        out.satisfiable = true;
        if (target < (int)vars.size()) {
            if ((bits >> target) & 1) {
                out.can_be_true = true;
            } else {
                out.can_be_false = true;
            }
        }
    }
    return out;
}

}  // namespace

Implication s_implied(const CnfFormula &formula, const PartialAssignment &a, int var, int s) {
    if (s < 1) {
        throw std::invalid_argument("s must be at least 1");
    }
    if (a.is_set(var)) {
        throw std::invalid_argument("s_implied on an assigned variable");
    }
    CnfFormula g = restrict(formula, a);
    const auto &clauses = g.clauses();
    SubsetWalker walker(clauses, g.num_vars(), s);
    bool forced_true = false;
    bool forced_false = false;
    bool unsat = false;
    // Every set of clauses that fixes var without being unsatisfiable has a
    // connected component that touches var and fixes it on its own; a minimal
    // unsatisfiable set is connected. Walking connected sets is therefore exact.
    for (int seed = 0; seed < (int)clauses.size() && !unsat; seed++) {
        walker.walk_from(seed, [&](const std::vector<int> &subset) {
            SubsetOutcome o = enumerate_subset(clauses, subset, var);
            if (!o.satisfiable) {
                unsat = true;
                return true;
            }
            forced_true |= o.can_be_true && !o.can_be_false;
            forced_false |= o.can_be_false && !o.can_be_true;
            return false;
        });
    }
    if (unsat || (forced_true && forced_false)) {
        return Implication::kBoth;
    }
    if (forced_true) {
        return Implication::kForcedTrue;
    }
    if (forced_false) {
        return Implication::kForcedFalse;
    }
    return Implication::kFree;
}

int index_width(const CnfFormula &formula) {
    int w = 0;
    for (const auto &c : formula.clauses()) {
        if (!c.empty()) {
            w = std::max(w, c.back().var - c.front().var);
        }
    }
    return w;
}

CnfFormula parse_dimacs(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int num_vars = -1;
    int num_clauses = -1;
    std::vector<Clause> clauses;
    Clause pending;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("dimacs line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream words(line);
        std::string first;
        if (!(words >> first) || first[0] == 'c' || first[0] == '%') {
            continue;
        }
        if (first == "p") {
            std::string kind;
            if (num_vars >= 0 || !(words >> kind >> num_vars >> num_clauses) || kind != "cnf" || num_vars < 0 ||
                num_clauses < 0) {
                fail("malformed header");
            }
            std::string extra;
            if (words >> extra) {
                fail("malformed header");
            }
            continue;
        }
        if (num_vars < 0) {
            fail("clause before header");
        }
        std::istringstream body(line);
        std::string token;
        while (body >> token) {
            long long x;
            size_t used = 0;
            try {
                x = std::stoll(token, &used);
            } catch (const std::exception &) {
                fail("bad token '" + token + "'");
            }
            if (used != token.size()) {
                fail("bad token '" + token + "'");
            }
            if (x == 0) {
                clauses.push_back(std::move(pending));
                pending.clear();
                continue;
            }
            long long v = x < 0 ? -x : x;
            if (v > num_vars) {
                fail("literal " + token + " out of range");
            }
            pending.push_back({(int)v, x > 0});
        }
    }
    if (num_vars < 0) {
        line_no = 0;
        fail("missing header");
    }
    if (!pending.empty()) {
        clauses.push_back(std::move(pending));
    }
    return CnfFormula(num_vars, std::move(clauses));
}

std::string to_dimacs(const CnfFormula &formula) {
    std::ostringstream out;
    out << "p cnf " << formula.num_vars() << " " << formula.num_clauses() << "\n";
    for (const auto &c : formula.clauses()) {
        for (const auto &lit : c) {
            out << lit.dimacs() << " ";
        }
        out << "0\n";
    }
    return out.str();
}

CnfFormula random_k_cnf(int num_vars, int num_clauses, int k, std::mt19937_64 &rng) {
    if (k > num_vars) {
        throw std::invalid_argument("clause width exceeds variable count");
    }
    std::vector<Clause> clauses;
    std::vector<int> vars(num_vars);
    for (int v = 0; v < num_vars; v++) {
        vars[v] = v + 1;
    }
    for (int c = 0; c < num_clauses; c++) {
        for (int j = 0; j < k; j++) {
            std::uniform_int_distribution<int> pick(j, num_vars - 1);
            std::swap(vars[j], vars[pick(rng)]);
        }
        Clause clause;
        for (int j = 0; j < k; j++) {
            clause.push_back({vars[j], (rng() & 1) != 0});
        }
        clauses.push_back(std::move(clause));
    }
    return CnfFormula(num_vars, std::move(clauses));
}

std::uint64_t count_solutions(const CnfFormula &formula) {
    int n = formula.num_vars();
    if (n > 30) {
        throw std::invalid_argument("too many variables to enumerate");
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;  // (vars mentioned, positive vars)
    for (const auto &c : formula.clauses()) {
        std::uint32_t mask = 0, pos = 0;
        for (const auto &lit : c) {
            mask |= 1u << (lit.var - 1);
            pos |= lit.positive ? 1u << (lit.var - 1) : 0;
        }
        masks.push_back({mask, pos});
    }
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); x++) {
        bool ok = true;
        for (auto [mask, pos] : masks) {
            // A clause is false iff every literal is false: x agrees with ~pos on mask.
            if (((x ^ pos) & mask) == mask) {
                ok = false;
                break;
            }
        }
        count += ok;
    }
    return count;
}

CnfFormula random_unique_k_cnf(int num_vars, int k, std::mt19937_64 &rng, std::vector<bool> *planted) {
    if (num_vars > 20) {
        throw std::invalid_argument("unique instance generation limited to 20 variables");
    }
    std::vector<bool> truth(num_vars);
    for (int v = 0; v < num_vars; v++) {
        truth[v] = (rng() & 1) != 0;
    }
    std::vector<Clause> clauses;
    std::vector<int> vars(num_vars);
    for (int v = 0; v < num_vars; v++) {
        vars[v] = v + 1;
    }
    CnfFormula f(num_vars, {});
    while (true) {
        for (int batch = 0; batch < num_vars; batch++) {
            Clause clause;
            do {
                clause.clear();
                for (int j = 0; j < k; j++) {
                    std::uniform_int_distribution<int> pick(j, num_vars - 1);
                    std::swap(vars[j], vars[pick(rng)]);
                    clause.push_back({vars[j], (rng() & 1) != 0});
                }
            } while (std::none_of(clause.begin(), clause.end(), [&](const Literal &lit) {
                return truth[lit.var - 1] == lit.positive;
            }));
            clauses.push_back(clause);
        }
        f = CnfFormula(num_vars, clauses);
        if (count_solutions(f) == 1) {
            break;
        }
    }
    if (planted != nullptr) {
        *planted = truth;
    }
    return f;
}

}  // namespace hybridts
