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

#ifndef HYBRIDTS_FORMULA_H
#define HYBRIDTS_FORMULA_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hybridts {

/// A literal over a 1-based variable index.
struct Literal {
    int var;
    bool positive;

    bool operator==(const Literal &other) const = default;
    bool operator<(const Literal &other) const {
        return var != other.var ? var < other.var : positive < other.positive;
    }
    Literal negated() const {
        return {var, !positive};
    }
    int dimacs() const {
        return positive ? var : -var;
    }
};

/// Literals sorted by variable, without repeats. Never tautological.
using Clause = std::vector<Literal>;

enum class Value : std::int8_t { kFalse = 0, kTrue = 1, kUnset = 2 };

inline Value value_of(bool b) {
    return b ? Value::kTrue : Value::kFalse;
}

class PartialAssignment {
   public:
    PartialAssignment() = default;
    explicit PartialAssignment(int num_vars) : values_(num_vars, Value::kUnset) {
    }

    int num_vars() const {
        return (int)values_.size();
    }
    Value get(int var) const {
        return values_[var - 1];
    }
    bool is_set(int var) const {
        return values_[var - 1] != Value::kUnset;
    }
    void set(int var, bool value) {
        values_[var - 1] = value_of(value);
    }
    void unset(int var) {
        values_[var - 1] = Value::kUnset;
    }
    int num_set() const;
    /// Literal status: 1 true, 0 false, -1 undetermined.
    int literal_status(Literal lit) const {
        Value v = values_[lit.var - 1];
        if (v == Value::kUnset) {
            return -1;
        }
        return (v == Value::kTrue) == lit.positive ? 1 : 0;
    }
    /// One character per variable: '0', '1' or '*'.
    std::string str() const;

    bool operator==(const PartialAssignment &other) const = default;

   private:
    std::vector<Value> values_;
};

class CnfFormula {
   public:
    CnfFormula() = default;
    /// Normalizes: sorts literals, drops repeated literals, drops tautologies,
    /// drops repeated clauses (first occurrence wins). Throws
    /// std::invalid_argument on a variable outside 1..num_vars.
    CnfFormula(int num_vars, std::vector<Clause> clauses);
    /// Convenience: clauses as signed DIMACS integers.
    static CnfFormula from_ints(int num_vars, const std::vector<std::vector<int>> &clauses);

    int num_vars() const {
        return num_vars_;
    }
    int num_clauses() const {
        return (int)clauses_.size();
    }
    const std::vector<Clause> &clauses() const {
        return clauses_;
    }
    const Clause &clause(int index) const {
        return clauses_[index];
    }
    bool has_empty_clause() const;
    bool empty() const {
        return clauses_.empty();
    }
    int max_clause_size() const;
    /// True when every clause has a true literal under a full assignment.
    bool satisfied_by(const std::vector<bool> &full) const;
    bool satisfied_by(const PartialAssignment &a) const;

    bool operator==(const CnfFormula &other) const = default;

   private:
    int num_vars_ = 0;
    std::vector<Clause> clauses_;
};

enum class Verdict { kSatisfied, kContradiction, kUndetermined };

/// Drops satisfied clauses and false literals. The result keeps num_vars.
CnfFormula restrict(const CnfFormula &formula, const PartialAssignment &a);

Verdict evaluate_predicate(const CnfFormula &formula, const PartialAssignment &a);

struct ForcedLiteral {
    int var;
    bool value;
    bool operator==(const ForcedLiteral &other) const = default;
};

/// First variable in `order` (default: index order) owning a singleton clause of
/// the restriction. If both polarities are singletons the value is true.
/// Throws std::logic_error when the restriction already has an empty clause.
std::optional<ForcedLiteral> unit_rule(
    const CnfFormula &formula, const PartialAssignment &a, std::span<const int> order = {});

/// First unset variable in `order` that occurs in one polarity only among the
/// remaining clauses. A variable occurring nowhere is assigned true.
std::optional<ForcedLiteral> pure_literal_rule(
    const CnfFormula &formula, const PartialAssignment &a, std::span<const int> order = {});

enum class Implication { kFree, kForcedTrue, kForcedFalse, kBoth };

/// Whether some set of at most `s` clauses of the restriction fixes `var`.
/// kBoth means a set of at most `s` clauses is itself unsatisfiable.
Implication s_implied(const CnfFormula &formula, const PartialAssignment &a, int var, int s);

/// Largest (max variable - min variable) over all clauses.
int index_width(const CnfFormula &formula);

/// Throws std::invalid_argument with a line number on malformed input.
CnfFormula parse_dimacs(const std::string &text);
std::string to_dimacs(const CnfFormula &formula);

/// Uniform random k-CNF: each clause draws k distinct variables and random signs.
CnfFormula random_k_cnf(int num_vars, int num_clauses, int k, std::mt19937_64 &rng);

/// Random k-CNF with exactly one satisfying assignment (the planted one).
/// Clauses are added until uniqueness holds; requires num_vars <= 20.
CnfFormula random_unique_k_cnf(int num_vars, int k, std::mt19937_64 &rng, std::vector<bool> *planted = nullptr);

/// Number of satisfying full assignments by enumeration (num_vars <= 30).
std::uint64_t count_solutions(const CnfFormula &formula);

}  // namespace hybridts

#endif
