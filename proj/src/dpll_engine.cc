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

#include "dpll_engine.h"

#include <algorithm>
#include <stdexcept>

namespace hybridts {

TrailDpll::TrailDpll(const CnfFormula &formula, const EngineConfig &config)
    : formula_(formula), rules_(config.rules), n_(formula.num_vars()) {
    for (auto r : rules_) {
        if (r == ReductionRule::kSImplication) {
            throw std::invalid_argument("trail engine supports unit and pure-literal rules only");
        }
    }
    config.validate(n_);
    var_at_rank_ = config.order(n_);
    rank_.assign(n_ + 1, 0);
    for (int k = 0; k < n_; k++) {
        rank_[var_at_rank_[k]] = k;
    }
    occ_.resize(n_ + 1);
    value_.assign(n_ + 1, -1);
    alive_pos_.assign(n_ + 1, 0);
    alive_neg_.assign(n_ + 1, 0);
    unit_pos_.assign(n_ + 1, 0);
    unit_neg_.assign(n_ + 1, 0);
    for (int c = 0; c < formula.num_clauses(); c++) {
        const Clause &clause = formula.clause(c);
        clauses_.push_back({(int)clause.size()});
        for (const auto &lit : clause) {
            occ_[lit.var].push_back({c, lit.positive});
            (lit.positive ? alive_pos_ : alive_neg_)[lit.var]++;
        }
        if (clause.empty()) {
            falsified_++;
        } else if (clause.size() == 1) {
            unit_add(clause[0].var, clause[0].positive);
        }
    }
    for (int v = 1; v <= n_; v++) {
        unset_.insert(rank_[v]);
        refresh_pure(v);
    }
}

void TrailDpll::unit_add(int var, bool positive) {
    int &count = positive ? unit_pos_[var] : unit_neg_[var];
    if (count++ == 0) {
        units_.insert(rank_[var]);
    }
}

void TrailDpll::unit_remove(int var, bool positive) {
    int &count = positive ? unit_pos_[var] : unit_neg_[var];
    count--;
    if (unit_pos_[var] == 0 && unit_neg_[var] == 0) {
        units_.erase(rank_[var]);
    }
}

void TrailDpll::refresh_pure(int var) {
    if (value_[var] >= 0) {
        return;
    }
    if (alive_pos_[var] == 0 || alive_neg_[var] == 0) {
        pures_.insert(rank_[var]);
    } else {
        pures_.erase(rank_[var]);
    }
}

int TrailDpll::open_literal(int clause, bool *positive) const {
    for (const auto &lit : formula_.clause(clause)) {
        if (value_[lit.var] < 0) {
            *positive = lit.positive;
            return lit.var;
        }
    }
    throw std::logic_error("no open literal");
}

void TrailDpll::assign(int var, bool value) {
    value_[var] = value ? 1 : 0;
    unset_.erase(rank_[var]);
    pures_.erase(rank_[var]);
    for (const auto &o : occ_[var]) {
        ClauseState &c = clauses_[o.clause];
        if (o.positive == value) {
            if (c.n_true == 0) {
                satisfied_++;
                if (c.n_false == c.size - 1) {
                    unit_remove(var, o.positive);
                }
                for (const auto &lit : formula_.clause(o.clause)) {
                    (lit.positive ? alive_pos_ : alive_neg_)[lit.var]--;
                    refresh_pure(lit.var);
                }
            }
            c.n_true++;
        } else {
            c.n_false++;
            if (c.n_true == 0) {
                if (c.n_false == c.size) {
                    unit_remove(var, o.positive);
                    falsified_++;
                } else if (c.n_false == c.size - 1) {
                    bool pos;
                    int u = open_literal(o.clause, &pos);
                    unit_add(u, pos);
                }
            }
        }
    }
}

void TrailDpll::unassign(int var) {
    bool value = value_[var] == 1;
    for (const auto &o : occ_[var]) {
        ClauseState &c = clauses_[o.clause];
        if (o.positive == value) {
            c.n_true--;
            if (c.n_true == 0) {
                satisfied_--;
                for (const auto &lit : formula_.clause(o.clause)) {
                    (lit.positive ? alive_pos_ : alive_neg_)[lit.var]++;
                    if (lit.var != var) {
                        refresh_pure(lit.var);
                    }
                }
                if (c.n_false == c.size - 1) {
                    unit_add(var, o.positive);
                }
            }
        } else {
            if (c.n_true == 0) {
                if (c.n_false == c.size) {
                    falsified_--;
                    unit_add(var, o.positive);
                } else if (c.n_false == c.size - 1) {
                    bool pos;
                    int u = open_literal(o.clause, &pos);
                    unit_remove(u, pos);
                }
            }
            c.n_false--;
        }
    }
    value_[var] = -1;
    unset_.insert(rank_[var]);
    refresh_pure(var);
}

bool TrailDpll::next_forced(int *var, bool *value) const {
    for (auto rule : rules_) {
        if (rule == ReductionRule::kUnit && !units_.empty()) {
            *var = var_at_rank_[*units_.begin()];
            *value = unit_pos_[*var] > 0;
            return true;
        }
        if (rule == ReductionRule::kPureLiteral && !pures_.empty()) {
            *var = var_at_rank_[*pures_.begin()];
            *value = alive_neg_[*var] == 0;
            return true;
        }
    }
    return false;
}

SolveResult TrailDpll::run(bool stop_at_first) {
    struct Frame {
        int var;
        bool branch;
        bool second;
    };
    std::vector<Frame> trail;
    SolveResult result;
    SearchTreeStats &st = result.stats;
    st.size = 1;
    std::int64_t branches_on_path = 0;
    int m = formula_.num_clauses();
    while (true) {
        st.height = std::max<std::int64_t>(st.height, (std::int64_t)trail.size());
        bool sat = falsified_ == 0 && satisfied_ == m;
        bool leaf = sat || falsified_ > 0;
        if (!leaf) {
            int var;
            bool value;
            if (next_forced(&var, &value)) {
                assign(var, value);
                trail.push_back({var, false, false});
            } else {
                var = var_at_rank_[*unset_.begin()];
                assign(var, false);
                trail.push_back({var, true, false});
                branches_on_path++;
                st.max_branching = std::max(st.max_branching, branches_on_path);
            }
            st.size++;
            continue;
        }
        st.leaf_count++;
        if (sat) {
            st.sat_leaves++;
            if (result.verdict != SolveVerdict::kSat) {
                result.verdict = SolveVerdict::kSat;
                st.effective_size = st.size;
                result.assignment.assign(n_, true);
                for (int v = 1; v <= n_; v++) {
                    result.assignment[v - 1] = value_[v] != 0;
                }
                if (stop_at_first) {
                    return result;
                }
            }
        }
        bool resumed = false;
        while (!trail.empty()) {
            Frame f = trail.back();
            trail.pop_back();
            unassign(f.var);
            if (f.branch && !f.second) {
                assign(f.var, true);
                trail.push_back({f.var, true, true});
                st.size++;
                resumed = true;
                break;
            }
            if (f.branch) {
                branches_on_path--;
            }
        }
        if (!resumed) {
            break;
        }
    }
    if (result.verdict != SolveVerdict::kSat) {
        st.effective_size = st.size;
    }
    return result;
}

}  // namespace hybridts
