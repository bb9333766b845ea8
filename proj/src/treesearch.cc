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

#include "hybridts/treesearch.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "dpll_engine.h"

namespace hybridts {

void EngineConfig::validate(int num_vars) const {
    if (!permutation.empty()) {
        if ((int)permutation.size() != num_vars) {
            throw std::invalid_argument("permutation length differs from the variable count");
        }
        std::vector<bool> seen(num_vars + 1, false);
        for (int v : permutation) {
            if (v < 1 || v > num_vars || seen[v]) {
                throw std::invalid_argument("permutation is not a bijection on 1..n");
            }
            seen[v] = true;
        }
    }
    if (kind == EngineKind::kDncPpsz && (guess_budget < 0 || guess_budget > num_vars)) {
        throw std::invalid_argument("guess budget outside 0..n");
    }
    if (s < 1) {
        throw std::invalid_argument("s must be at least 1");
    }
}

std::vector<int> EngineConfig::order(int num_vars) const {
    if (!permutation.empty()) {
        return permutation;
    }
    std::vector<int> out(num_vars);
    for (int k = 0; k < num_vars; k++) {
        out[k] = k + 1;
    }
    return out;
}

EngineConfig EngineConfig::dpll() {
    return EngineConfig{};
}

EngineConfig EngineConfig::dnc_ppsz(int guess_budget, int s, std::vector<int> permutation) {
    EngineConfig c;
    c.kind = EngineKind::kDncPpsz;
    c.rules = {ReductionRule::kSImplication};
    c.s = s;
    c.guess_budget = guess_budget;
    c.permutation = std::move(permutation);
    return c;
}

std::string verdict_name(SolveVerdict v) {
    switch (v) {
        case SolveVerdict::kSat:
            return "sat";
        case SolveVerdict::kUnsat:
            return "unsat";
        case SolveVerdict::kNotFound:
            return "not-found";
    }
    return "?";
}

namespace {

// Forcing status of one particular variable under a rule.
std::optional<bool> forced_by(ReductionRule rule, const CnfFormula &f, const PartialAssignment &a, int var, int s) {
    if (rule == ReductionRule::kSImplication) {
        Implication imp = s_implied(f, a, var, s);
        if (imp == Implication::kFree) {
            return std::nullopt;
        }
        return imp != Implication::kForcedFalse;
    }
    bool pos = false, neg = false, pos_unit = false, neg_unit = false;
    for (const auto &c : f.clauses()) {
        bool sat = false;
        int open = 0;
        const Literal *mine = nullptr;
        for (const auto &lit : c) {
            int st = a.literal_status(lit);
            sat |= st == 1;
            if (st == -1) {
                open++;
                if (lit.var == var) {
                    mine = &lit;
                }
            }
        }
        if (sat || mine == nullptr) {
            continue;
        }
        (mine->positive ? pos : neg) = true;
        if (open == 1) {
            (mine->positive ? pos_unit : neg_unit) = true;
        }
    }
    if (rule == ReductionRule::kUnit) {
        if (pos_unit || neg_unit) {
            return pos_unit;
        }
        return std::nullopt;
    }
    if (!(pos && neg)) {
        return !neg;
    }
    return std::nullopt;
}

}  // namespace

NodeStep decide(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config) {
    const PartialAssignment &a = node.assignment;
    if ((int)a.num_vars() != formula.num_vars()) {
        throw std::invalid_argument("assignment does not pair with formula");
    }
    NodeStep step;
    Verdict v = evaluate_predicate(formula, a);
    if (v != Verdict::kUndetermined) {
        step.leaf = v == Verdict::kSatisfied ? LeafKind::kSatisfied : LeafKind::kContradiction;
        return step;
    }
    std::vector<int> order = config.order(formula.num_vars());
    int first_free = 0;
    for (int x : order) {
        if (!a.is_set(x)) {
            first_free = x;
            break;
        }
    }
    if (config.kind == EngineKind::kDpll) {
        for (auto rule : config.rules) {
            std::optional<ForcedLiteral> forced;
            if (rule == ReductionRule::kUnit) {
                forced = unit_rule(formula, a, order);
            } else if (rule == ReductionRule::kPureLiteral) {
                forced = pure_literal_rule(formula, a, order);
            } else {
                for (int x : order) {
                    if (a.is_set(x)) {
                        continue;
                    }
                    Implication imp = s_implied(formula, a, x, config.s);
                    if (imp != Implication::kFree) {
                        forced = ForcedLiteral{x, imp != Implication::kForcedFalse};
                        break;
                    }
                }
            }
            if (forced) {
                step.count = ChildCount::kOneChild;
                step.var = forced->var;
                step.value = forced->value;
                return step;
            }
        }
        step.count = ChildCount::kTwoChildren;
        step.var = first_free;
        return step;
    }
    for (auto rule : config.rules) {
        if (auto forced = forced_by(rule, formula, a, first_free, config.s)) {
            step.count = ChildCount::kOneChild;
            step.var = first_free;
            step.value = *forced;
            return step;
        }
    }
    if (node.guess_count >= config.guess_budget) {
        step.leaf = LeafKind::kOutOfGuesses;
        return step;
    }
    step.count = ChildCount::kTwoChildren;
    step.var = first_free;
    return step;
}

ChildCount ch_no(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config) {
    return decide(node, formula, config).count;
}

namespace {

TreeNode child_of(const TreeNode &node, const NodeStep &step, bool b) {
    TreeNode out = node;
    out.depth++;
    if (step.count == ChildCount::kOneChild) {
        out.assignment.set(step.var, step.value);
    } else {
        out.assignment.set(step.var, b);
        out.guess_count++;
    }
    return out;
}

}  // namespace

TreeNode ch1(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config) {
    NodeStep step = decide(node, formula, config);
    if (step.count != ChildCount::kOneChild) {
        throw std::logic_error("ch1 on a node without exactly one child");
    }
    return child_of(node, step, false);
}

TreeNode ch2(const TreeNode &node, const CnfFormula &formula, const EngineConfig &config, bool b) {
    NodeStep step = decide(node, formula, config);
    if (step.count != ChildCount::kTwoChildren) {
        throw std::logic_error("ch2 on a node without two children");
    }
    return child_of(node, step, b);
}

namespace {

std::vector<bool> completed(const PartialAssignment &a) {
    std::vector<bool> out(a.num_vars());
    for (int v = 1; v <= a.num_vars(); v++) {
        out[v - 1] = a.get(v) != Value::kFalse;
    }
    return out;
}

// Depth-first traversal over decide(), 0-branch first.
SolveResult generic_search(const CnfFormula &formula, const EngineConfig &config, bool stop_at_first) {
    SolveResult result;
    SearchTreeStats &st = result.stats;
    bool done = false;
    std::function<void(const TreeNode &, int)> visit = [&](const TreeNode &node, int branches) {
        st.size++;
        st.height = std::max<std::int64_t>(st.height, node.depth);
        st.max_branching = std::max<std::int64_t>(st.max_branching, branches);
        NodeStep step = decide(node, formula, config);
        if (step.count == ChildCount::kZeroLeaf) {
            st.leaf_count++;
            if (step.leaf == LeafKind::kSatisfied) {
                st.sat_leaves++;
                if (result.verdict != SolveVerdict::kSat) {
                    result.verdict = SolveVerdict::kSat;
                    result.assignment = completed(node.assignment);
                    st.effective_size = st.size;
                    done = stop_at_first;
                }
            }
            return;
        }
        if (step.count == ChildCount::kOneChild) {
            visit(child_of(node, step, false), branches);
            return;
        }
        visit(child_of(node, step, false), branches + 1);
        if (!done) {
            visit(child_of(node, step, true), branches + 1);
        }
    };
    visit(TreeNode::root(formula.num_vars()), 0);
    if (result.verdict != SolveVerdict::kSat) {
        st.effective_size = st.size;
        result.verdict = config.kind == EngineKind::kDpll ? SolveVerdict::kUnsat : SolveVerdict::kNotFound;
    }
    return result;
}

bool trail_capable(const EngineConfig &config) {
    return std::none_of(config.rules.begin(), config.rules.end(), [](ReductionRule r) {
        return r == ReductionRule::kSImplication;
    });
}

}  // namespace

SolveResult dpll_solve(const CnfFormula &formula, const EngineConfig &config) {
    if (config.kind != EngineKind::kDpll) {
        throw std::invalid_argument("dpll_solve needs a DPLL configuration");
    }
    config.validate(formula.num_vars());
    if (trail_capable(config)) {
        return TrailDpll(formula, config).run(true);
    }
    return generic_search(formula, config, true);
}

SolveResult dnc_ppsz_solve(const CnfFormula &formula, const EngineConfig &config) {
    if (config.kind != EngineKind::kDncPpsz) {
        throw std::invalid_argument("dnc_ppsz_solve needs a dncPPSZ configuration");
    }
    config.validate(formula.num_vars());
    return generic_search(formula, config, true);
}

std::vector<int> random_permutation(int n, std::mt19937_64 &rng) {
    std::vector<int> p(n);
    for (int k = 0; k < n; k++) {
        p[k] = k + 1;
    }
    for (int k = n - 1; k > 0; k--) {
        std::uniform_int_distribution<int> pick(0, k);
        std::swap(p[k], p[pick(rng)]);
    }
    return p;
}

PpszResult ppsz_proper(const CnfFormula &formula, int s, double epsilon, int max_rounds, std::uint64_t seed,
                       double gamma) {
    if (max_rounds < 1) {
        throw std::invalid_argument("max_rounds must be at least 1");
    }
    int n = formula.num_vars();
    PpszResult out;
    out.guess_budget = std::min(n, (int)std::ceil((gamma + epsilon) * n - 1e-9));
    std::mt19937_64 rng(seed);
    for (int round = 1; round <= max_rounds; round++) {
        EngineConfig config = EngineConfig::dnc_ppsz(out.guess_budget, s, random_permutation(n, rng));
        SolveResult r = dnc_ppsz_solve(formula, config);
        out.per_round.push_back(r.stats);
        out.rounds_used = round;
        if (r.verdict == SolveVerdict::kSat) {
            out.verdict = SolveVerdict::kSat;
            out.assignment = r.assignment;
            return out;
        }
    }
    return out;
}

SearchTreeStats stats_of(const Tree &tree) {
    SearchTreeStats st;
    st.size = tree.size();
    st.height = tree.height();
    st.max_branching = tree.max_branching();
    st.leaf_count = tree.leaf_count();
    st.effective_size = st.size;
    for (int v = 0; v < tree.size(); v++) {
        if (tree.marked[v]) {
            st.sat_leaves++;
            // Preorder index of the first marked vertex is its DFS visit time.
            if (st.sat_leaves == 1) {
                st.effective_size = v + 1;
            }
        }
    }
    return st;
}

SearchTree build_search_tree(const CnfFormula &formula, const EngineConfig &config, std::int64_t max_vertices) {
    config.validate(formula.num_vars());
    SearchTree out;
    std::function<void(const TreeNode &, int)> grow = [&](const TreeNode &node, int par) {
        if (out.shape.size() >= max_vertices) {
            throw std::length_error("search tree exceeds the vertex cap");
        }
        NodeStep step = decide(node, formula, config);
        int v = out.shape.add(par, step.leaf == LeafKind::kSatisfied);
        out.nodes.push_back(node);
        out.steps.push_back(step);
        if (step.count == ChildCount::kOneChild) {
            grow(child_of(node, step, false), v);
        } else if (step.count == ChildCount::kTwoChildren) {
            grow(child_of(node, step, false), v);
            grow(child_of(node, step, true), v);
        }
    };
    grow(TreeNode::root(formula.num_vars()), -1);
    out.stats = stats_of(out.shape);
    return out;
}

SearchTreeStats tree_stats(const CnfFormula &formula, const EngineConfig &config) {
    if (config.kind == EngineKind::kDpll && trail_capable(config)) {
        config.validate(formula.num_vars());
        return TrailDpll(formula, config).run(false).stats;
    }
    return build_search_tree(formula, config).stats;
}

GuessBoundReport estimate_permutation_guess_bound(const CnfFormula &formula, int samples, std::uint64_t seed, int s,
                                                  int threshold) {
    if (dpll_solve(formula).verdict != SolveVerdict::kSat) {
        throw std::invalid_argument("guess bound needs a satisfiable formula");
    }
    int n = formula.num_vars();
    GuessBoundReport out;
    out.threshold = threshold;
    std::mt19937_64 rng(seed);
    int exceeding = 0;
    for (int k = 0; k < samples; k++) {
        EngineConfig config = EngineConfig::dnc_ppsz(n, s, random_permutation(n, rng));
        int best = n + 1;
        std::function<void(const TreeNode &)> visit = [&](const TreeNode &node) {
            if (node.guess_count >= best) {
                return;
            }
            NodeStep step = decide(node, formula, config);
            if (step.count == ChildCount::kZeroLeaf) {
                if (step.leaf == LeafKind::kSatisfied) {
                    best = node.guess_count;
                }
                return;
            }
            visit(child_of(node, step, false));
            if (step.count == ChildCount::kTwoChildren) {
                visit(child_of(node, step, true));
            }
        };
        visit(TreeNode::root(n));
        out.min_guesses.push_back(best);
        exceeding += best > threshold;
    }
    out.fraction_exceeding = samples > 0 ? (double)exceeding / samples : 0.0;
    return out;
}

}  // namespace hybridts
