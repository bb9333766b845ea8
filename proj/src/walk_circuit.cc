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

#include <cmath>
#include <set>
#include <stdexcept>

#include "hybridts/qcircuit.h"

namespace hybridts {

std::vector<int> WalkLayout::scratch() const {
    std::vector<int> out = count_a;
    out.insert(out.end(), count_b.begin(), count_b.end());
    out.push_back(scratch_u);
    out.push_back(scratch_g);
    return out;
}

namespace {

int bit_width(int n) {
    int w = 1;
    while ((1 << w) <= n) {
        w++;
    }
    return w;
}

// Builds the components. Inside a "view" block the pair (set, val) of each
// vertex variable holds (assigned false, assigned true), so literal tests are
// single-wire controls; blocks toggle the view on entry and exit.
class Builder {
   public:
    Builder(const CnfFormula &f, const EngineConfig &config) : f_(f), config_(config) {
        config.validate(f.num_vars());
        if (config.kind != EngineKind::kDpll) {
            throw std::invalid_argument("walk components model the DPLL engine");
        }
        for (auto r : config.rules) {
            if (r == ReductionRule::kSImplication) {
                throw std::invalid_argument("walk components support the unit and pure literal rules");
            }
        }
        order_ = config.order(f.num_vars());
        occurrences_.resize(f.num_vars() + 1);
        for (int j = 0; j < f.num_clauses(); j++) {
            for (const auto &lit : f.clause(j)) {
                occurrences_[lit.var].push_back(j);
            }
        }
        allocate();
    }

    const WalkLayout &layout() const {
        return L_;
    }

    Circuit blank() const {
        return Circuit(L_.num_wires);
    }

    void toggle_view(Circuit &c) const {
        for (int v = 0; v < L_.n; v++) {
            c.x(L_.x_set[v], {{L_.x_val[v], true}});
        }
    }

    // Controls in the view.
    Control assigned_true(int var) const {
        return {L_.x_val[var - 1], true};
    }
    Control assigned_false(int var) const {
        return {L_.x_set[var - 1], true};
    }
    Control lit_false(const Literal &l) const {
        return l.positive ? assigned_false(l.var) : assigned_true(l.var);
    }
    Control lit_not_true(const Literal &l) const {
        return l.positive ? Control{L_.x_val[l.var - 1], false} : Control{L_.x_set[l.var - 1], false};
    }
    std::vector<Control> unset(int var) const {
        return {{L_.x_val[var - 1], false}, {L_.x_set[var - 1], false}};
    }

    // count_a = satisfied clauses (view).
    Circuit count_satisfied() const {
        Circuit c = blank();
        for (const auto &clause : f_.clauses()) {
            std::vector<Control> none_true;
            for (const auto &l : clause) {
                none_true.push_back(lit_not_true(l));
            }
            c.increment(L_.count_a, 1);
            c.increment(L_.count_a, -1, none_true);
        }
        return c;
    }

    // count_b = falsified clauses (view).
    Circuit count_falsified() const {
        Circuit c = blank();
        for (const auto &clause : f_.clauses()) {
            std::vector<Control> all_false;
            for (const auto &l : clause) {
                all_false.push_back(lit_false(l));
            }
            c.increment(L_.count_b, 1, all_false);
        }
        return c;
    }

    Circuit leaf() const {
        Circuit c = blank();
        toggle_view(c);
        Circuit counts = count_satisfied();
        counts.append(count_falsified());
        c.append(counts);
        // [all satisfied] and [some falsified] never hold together.
        c.x(L_.leaf, equals(L_.count_a, (std::uint64_t)L_.m));
        c.x(L_.leaf);
        c.x(L_.leaf, equals(L_.count_b, 0));
        c.append(counts.inverse());
        toggle_view(c);
        c.checkpoint("leaf scratch", L_.scratch());
        return c;
    }

    Circuit marked() const {
        Circuit c = blank();
        toggle_view(c);
        Circuit counts = count_satisfied();
        c.append(counts);
        c.x(L_.marked, equals(L_.count_a, (std::uint64_t)L_.m));
        c.append(counts.inverse());
        toggle_view(c);
        c.checkpoint("marked scratch", L_.scratch());
        return c;
    }

    // Occurrences of var counted into count_a (positive) and count_b
    // (negative), restricted to clauses where the other literals satisfy `other`.
    Circuit count_occurrences(int var, bool unit_mode) const {
        Circuit c = blank();
        for (int j : occurrences_[var]) {
            std::vector<Control> ctl = unset(var);
            bool positive = true;
            for (const auto &l : f_.clause(j)) {
                if (l.var == var) {
                    positive = l.positive;
                } else {
                    ctl.push_back(unit_mode ? lit_false(l) : lit_not_true(l));
                }
            }
            c.increment(positive ? L_.count_a : L_.count_b, 1, ctl);
        }
        return c;
    }

    // Writes var into `out` under g = [out == 0 and u], then clears g.
    void claim_first(Circuit &c, int var, const std::vector<int> &out, const std::vector<Control> &cond) const {
        c.x(L_.scratch_g, equals(out, 0) + cond);
        for (std::size_t b = 0; b < out.size(); b++) {
            if ((var >> b) & 1) {
                c.x(out[b], {{L_.scratch_g, true}});
            }
        }
    }
    void release_first(Circuit &c, int var, const std::vector<int> &out, const std::vector<Control> &cond) const {
        c.x(L_.scratch_g, equals(out, (std::uint64_t)var) + cond);
    }

    Circuit unit(int slot) const {
        const auto &out = L_.rule_var[slot];
        int sign = L_.rule_sign[slot];
        Circuit c = blank();
        toggle_view(c);
        Control g{L_.scratch_g, true};
        for (int var : order_) {
            Circuit counts = count_occurrences(var, true);
            Circuit u = blank();
            u.x(L_.scratch_u);
            u.x(L_.scratch_u, equals(L_.count_a, 0) + equals(L_.count_b, 0));
            c.append(counts);
            c.append(u);
            std::vector<Control> cond{{L_.scratch_u, true}};
            claim_first(c, var, out, cond);
            // Both polarities forced: the positive one wins, as in the classical rule.
            c.x(sign, {g});
            c.x(sign, std::vector<Control>{g} + equals(L_.count_a, 0));
            release_first(c, var, out, cond);
            c.append(u.inverse());
            c.append(counts.inverse());
        }
        toggle_view(c);
        c.checkpoint("unit scratch", L_.scratch());
        return c;
    }

    Circuit pure(int slot) const {
        const auto &out = L_.rule_var[slot];
        int sign = L_.rule_sign[slot];
        Circuit c = blank();
        toggle_view(c);
        Control g{L_.scratch_g, true};
        for (int var : order_) {
            Circuit counts = count_occurrences(var, false);
            // u = unset and (no positive or no negative occurrence).
            Circuit u = blank();
            u.x(L_.scratch_u, unset(var) + equals(L_.count_a, 0));
            u.x(L_.scratch_u, unset(var) + equals(L_.count_b, 0));
            u.x(L_.scratch_u, unset(var) + equals(L_.count_a, 0) + equals(L_.count_b, 0));
            c.append(counts);
            c.append(u);
            std::vector<Control> cond{{L_.scratch_u, true}};
            claim_first(c, var, out, cond);
            // False only when the variable occurs negatively and never positively.
            c.x(sign, {g});
            c.x(sign, std::vector<Control>{g} + equals(L_.count_a, 0));
            c.x(sign, std::vector<Control>{g} + equals(L_.count_a, 0) + equals(L_.count_b, 0));
            release_first(c, var, out, cond);
            c.append(u.inverse());
            c.append(counts.inverse());
        }
        toggle_view(c);
        c.checkpoint("pure scratch", L_.scratch());
        return c;
    }

    Circuit first_free() const {
        Circuit c = blank();
        toggle_view(c);
        for (int var : order_) {
            claim_first(c, var, L_.free_var, unset(var));
            release_first(c, var, L_.free_var, unset(var));
        }
        toggle_view(c);
        c.checkpoint("free scratch", L_.scratch());
        return c;
    }

    // Y ^= x (canonical encoding).
    void copy_vertex(Circuit &c, const std::vector<Control> &ctl) const {
        for (int v = 0; v < L_.n; v++) {
            c.x(L_.y_set[v], ctl + std::vector<Control>{{L_.x_set[v], true}});
            c.x(L_.y_val[v], ctl + std::vector<Control>{{L_.x_val[v], true}});
        }
    }

    // Y ^= (variable child_var set to the value): value_wire < 0 means 1.
    void assign(Circuit &c, int value_wire, const std::vector<Control> &ctl) const {
        for (int v = 1; v <= L_.n; v++) {
            auto at = ctl + equals(L_.child_var, (std::uint64_t)v);
            c.x(L_.y_set[v - 1], at);
            if (value_wire < 0) {
                c.x(L_.y_val[v - 1], at);
            } else {
                c.x(L_.y_val[v - 1], at + std::vector<Control>{{value_wire, true}});
            }
        }
    }

    Circuit next() const {
        Circuit c = blank();
        copy_vertex(c, {});
        assign(c, L_.child_value, {});
        return c;
    }

    Circuit root_check() const {
        Circuit c = blank();
        std::vector<Control> all_unset;
        for (int w : L_.x_set) {
            all_unset.push_back({w, false});
        }
        c.x(L_.root, all_unset);
        return c;
    }

    Circuit parity() const {
        Circuit c = blank();
        for (int w : L_.x_set) {
            c.x(L_.parity, {{w, true}});
        }
        return c;
    }

    // Leaf bit, rule outputs, branch variable, root bit, the combined first
    // child (child_var, child_value) and the two-children bit.
    Circuit info() const {
        Circuit c = blank();
        c.append(leaf());
        for (std::size_t r = 0; r < config_.rules.size(); r++) {
            c.append(config_.rules[r] == ReductionRule::kUnit ? unit((int)r) : pure((int)r));
        }
        c.append(first_free());
        c.append(root_check());
        std::vector<Control> none_before;
        for (std::size_t r = 0; r < config_.rules.size(); r++) {
            for (std::size_t b = 0; b < L_.child_var.size(); b++) {
                c.x(L_.child_var[b], none_before + std::vector<Control>{{L_.rule_var[r][b], true}});
            }
            c.x(L_.child_value, none_before + std::vector<Control>{{L_.rule_sign[r], true}});
            none_before = none_before + equals(L_.rule_var[r], 0);
        }
        for (std::size_t b = 0; b < L_.child_var.size(); b++) {
            c.x(L_.child_var[b], none_before + std::vector<Control>{{L_.free_var[b], true}});
        }
        c.x(L_.two, std::vector<Control>{{L_.leaf, false}} + none_before);
        return c;
    }

    Circuit va() const {
        double n = (double)L_.n;
        Circuit in = info();
        Circuit c = blank();
        c.append(in);
        std::vector<Control> one_child{{L_.leaf, false}, {L_.two, false}};
        std::vector<Control> two_children{{L_.two, true}};
        double r1 = 1 / std::sqrt(2.0), r2 = 1 / std::sqrt(3.0);
        double q1 = 1 / std::sqrt(1 + n), q2 = 1 / std::sqrt(1 + 2 * n);
        c.unitary(L_.index, state_preparation({r1, r1, 0, 0}), one_child + std::vector<Control>{{L_.root, false}});
        c.unitary(L_.index, state_preparation({q1, std::sqrt(n) * q1, 0, 0}),
                  one_child + std::vector<Control>{{L_.root, true}});
        c.unitary(L_.index, state_preparation({r2, r2, r2, 0}), two_children + std::vector<Control>{{L_.root, false}});
        c.unitary(L_.index, state_preparation({q2, std::sqrt(n) * q2, std::sqrt(n) * q2, 0}),
                  two_children + std::vector<Control>{{L_.root, true}});
        // Controlled children.
        copy_vertex(c, equals(L_.index, 0));
        copy_vertex(c, equals(L_.index, 1));
        assign(c, L_.child_value, equals(L_.index, 1));
        copy_vertex(c, equals(L_.index, 2));
        assign(c, -1, equals(L_.index, 2));
        // Disentangle: only child i's branch reaches Y = 0 after undoing child i.
        std::vector<Control> y_zero = equals(L_.y_set, 0) + equals(L_.y_val, 0);
        for (int i = 1; i <= 2; i++) {
            std::vector<Control> has = i == 1 ? std::vector<Control>{{L_.leaf, false}} : two_children;
            int value = i == 1 ? L_.child_value : -1;
            copy_vertex(c, has);
            assign(c, value, has);
            c.increment(L_.index, -i, has + y_zero);
            copy_vertex(c, has);
            assign(c, value, has);
        }
        c.checkpoint("index cleared", L_.index);
        c.append(in.inverse());
        std::vector<int> info_wires = L_.scratch();
        for (int w : {L_.leaf, L_.root, L_.two, L_.child_value}) {
            info_wires.push_back(w);
        }
        for (const auto &reg : {L_.free_var, L_.child_var}) {
            info_wires.insert(info_wires.end(), reg.begin(), reg.end());
        }
        for (std::size_t r = 0; r < L_.rule_var.size(); r++) {
            info_wires.insert(info_wires.end(), L_.rule_var[r].begin(), L_.rule_var[r].end());
            info_wires.push_back(L_.rule_sign[r]);
        }
        c.checkpoint("info uncomputed", info_wires);
        return c;
    }

    Circuit ra(const Circuit &va_circuit) const {
        Circuit flag = blank();
        flag.append(marked());
        flag.append(parity());
        flag.x(L_.flag, {{L_.parity, false}, {L_.marked, false}});
        flag.append(parity());
        flag.append(marked());
        Circuit c = blank();
        c.append(va_circuit.inverse());
        c.append(flag);
        c.phase_flip(std::vector<Control>{{L_.flag, true}} + equals(L_.y_set, 0) + equals(L_.y_val, 0) +
                     equals(L_.index, 0));
        c.append(flag);
        c.append(va_circuit);
        return c;
    }

   private:
    void allocate() {
        Circuit c;
        int n = f_.num_vars();
        L_.n = n;
        L_.m = f_.num_clauses();
        int jw = bit_width(n);
        for (auto *reg : {&L_.x_set, &L_.x_val, &L_.y_set, &L_.y_val}) {
            *reg = c.add_register(n);
        }
        L_.count_a = c.add_register(counter_width(L_.m));
        L_.count_b = c.add_register(counter_width(L_.m));
        for (int *w : {&L_.scratch_u, &L_.scratch_g, &L_.leaf, &L_.marked, &L_.parity, &L_.flag, &L_.root, &L_.two}) {
            *w = c.add_wires(1);
        }
        for (std::size_t r = 0; r < config_.rules.size(); r++) {
            L_.rule_var.push_back(c.add_register(jw));
            L_.rule_sign.push_back(c.add_wires(1));
        }
        L_.free_var = c.add_register(jw);
        L_.child_var = c.add_register(jw);
        L_.child_value = c.add_wires(1);
        L_.index = c.add_register(2);
        L_.num_wires = c.num_wires();
    }

    const CnfFormula &f_;
    EngineConfig config_;
    std::vector<int> order_;
    std::vector<std::vector<int>> occurrences_;
    WalkLayout L_;
};

}  // namespace

std::vector<std::pair<std::string, int>> WalkComponents::qubit_costs() const {
    std::vector<std::pair<std::string, int>> out{{"leaf", wires_used(leaf)}, {"marked", wires_used(marked)}};
    for (std::size_t r = 0; r < rules.size(); r++) {
        out.emplace_back("rule" + std::to_string(r), wires_used(rules[r]));
    }
    out.emplace_back("first_free", wires_used(first_free));
    out.emplace_back("next", wires_used(next));
    out.emplace_back("va", wires_used(va));
    out.emplace_back("ra", wires_used(ra));
    return out;
}

WalkComponents build_walk_components(const CnfFormula &formula, const EngineConfig &config) {
    Builder b(formula, config);
    WalkComponents w;
    w.layout = b.layout();
    w.leaf = b.leaf();
    w.marked = b.marked();
    for (std::size_t r = 0; r < config.rules.size(); r++) {
        w.rules.push_back(config.rules[r] == ReductionRule::kUnit ? b.unit((int)r) : b.pure((int)r));
    }
    w.first_free = b.first_free();
    w.next = b.next();
    w.va = b.va();
    w.ra = b.ra(w.va);
    return w;
}

int wires_used(const Circuit &circuit) {
    std::set<int> used;
    for (const auto &g : circuit.gates()) {
        used.insert(g.targets.begin(), g.targets.end());
        for (const auto &c : g.controls) {
            used.insert(c.wire);
        }
    }
    return (int)used.size();
}

BasisState encode_vertex(const WalkLayout &layout, const PartialAssignment &a, bool child_register) {
    BasisState s;
    const auto &set = child_register ? layout.y_set : layout.x_set;
    const auto &val = child_register ? layout.y_val : layout.x_val;
    for (int v = 1; v <= layout.n; v++) {
        if (a.is_set(v)) {
            s[set[v - 1]] = true;
            s[val[v - 1]] = a.get(v) == Value::kTrue;
        }
    }
    return s;
}

PartialAssignment decode_vertex(const WalkLayout &layout, const BasisState &s, bool child_register) {
    PartialAssignment a(layout.n);
    const auto &set = child_register ? layout.y_set : layout.x_set;
    const auto &val = child_register ? layout.y_val : layout.x_val;
    for (int v = 1; v <= layout.n; v++) {
        if (s[set[v - 1]]) {
            a.set(v, s[val[v - 1]]);
        }
    }
    return a;
}

Eigen::MatrixXcd state_preparation(const std::vector<double> &amplitudes) {
    if (amplitudes.size() != 4) {
        throw std::invalid_argument("two-wire preparation needs four amplitudes");
    }
    Eigen::Vector4d target(amplitudes.data());
    if (std::abs(target.norm() - 1) > 1e-12) {
        throw std::invalid_argument("amplitudes are not normalized");
    }
    Eigen::Vector4d w = Eigen::Vector4d::Unit(0) - target;
    Eigen::Matrix4d h = Eigen::Matrix4d::Identity();
    if (w.norm() > 1e-15) {
        // Householder reflection sending e0 to the target.
        h -= 2 * w * w.transpose() / w.squaredNorm();
    }
    return h.cast<Amplitude>();
}

}  // namespace hybridts
