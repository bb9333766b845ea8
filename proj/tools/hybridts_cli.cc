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

// Experiment harness: one subcommand per pipeline, one JSON report per run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hybridts/decomposition.h"
#include "hybridts/experiments.h"
#include "hybridts/latticesat.h"
#include "hybridts/qcircuit.h"
#include "hybridts/qwalk.h"
#include "hybridts/sia.h"
#include "hybridts/treesearch.h"
#include "json.hpp"

#ifndef HYBRIDTS_VERSION
#define HYBRIDTS_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace hybridts;

namespace {

constexpr const char *kSchema = "hybridts-report/1";

// Exit codes: 1 a hard invariant failed, 2 bad spec, 3 resource cap.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Spec {
    std::string command;
    std::vector<std::string> inputs;
    std::string random;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    std::optional<double> kappa, lambda, delta;
    std::optional<int> budget, trials;
    int s = 1;
    std::optional<int> w;
    std::string engine = "dpll";
    std::string measure = "height";
    std::string advice;
    int k = 3;
    std::optional<int> t;
    std::optional<int> iterations;
    int n_from = 0, n_to = 0;
    bool check = false;
    bool timing = false;
    std::string lattice_out, cnf_out;

    json echo() const {
        json j;
        j["command"] = command;
        j["inputs"] = inputs;
        if (!random.empty()) j["random"] = random;
        if (seed) j["seed"] = *seed;
        if (kappa) j["kappa"] = *kappa;
        if (lambda) j["lambda"] = *lambda;
        if (delta) j["delta"] = *delta;
        if (budget) j["budget"] = *budget;
        if (trials) j["trials"] = *trials;
        if (w) j["w"] = *w;
        if (t) j["t"] = *t;
        if (iterations) j["iterations"] = *iterations;
        j["s"] = s;
        j["engine"] = engine;
        j["measure"] = measure;
        j["advice"] = advice;
        j["k"] = k;
        j["n_from"] = n_from;
        j["n_to"] = n_to;
        j["check"] = check;
        j["format"] = format;
        return j;
    }

    std::uint64_t need_seed() const {
        if (!seed) {
            throw SpecError(command + " needs --seed");
        }
        return *seed;
    }
};

struct Instance {
    std::string id;
    CnfFormula formula;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Inputs sorted by id; --random N:M adds a seeded random 3-CNF.
std::vector<Instance> load_instances(const Spec &spec) {
    std::vector<Instance> out;
    for (const auto &path : spec.inputs) {
        try {
            out.push_back({path, parse_dimacs(read_file(path))});
        } catch (const std::invalid_argument &e) {
            throw SpecError(path + ": " + e.what());
        }
    }
    if (!spec.random.empty()) {
        int n = 0, m = 0;
        char colon = 0;
        std::istringstream in(spec.random);
        if (!(in >> n >> colon >> m) || colon != ':' || n < 3 || m < 0) {
            throw SpecError("--random expects N:M with N >= 3");
        }
        std::mt19937_64 rng(spec.need_seed());
        out.push_back({"random-" + spec.random, random_k_cnf(n, m, 3, rng)});
    }
    if (out.empty()) {
        throw SpecError(spec.command + " needs --input or --random");
    }
    std::sort(out.begin(), out.end(), [](const Instance &a, const Instance &b) { return a.id < b.id; });
    return out;
}

std::string bits_text(const std::vector<bool> &bits) {
    std::string s;
    for (bool b : bits) {
        s += b ? '1' : '0';
    }
    return s;
}

json stats_json(const SearchTreeStats &st) {
    return {{"size", st.size},           {"height", st.height},         {"max_branching", st.max_branching},
            {"leaf_count", st.leaf_count}, {"sat_leaves", st.sat_leaves}, {"effective_size", st.effective_size}};
}

EngineConfig engine_config(const Spec &spec, int n) {
    if (spec.engine == "dpll") {
        return EngineConfig::dpll();
    }
    if (spec.engine == "dncppsz") {
        std::vector<int> perm;
        if (spec.seed) {
            std::mt19937_64 rng(*spec.seed);
            perm = random_permutation(n, rng);
        }
        return EngineConfig::dnc_ppsz(spec.budget.value_or(n), spec.s, perm);
    }
    throw SpecError("unknown engine " + spec.engine);
}

struct Result {
    json records = json::array();
    json aggregate = json::object();
    bool failed = false;
};

Result cmd_solve(const Spec &spec) {
    Result r;
    for (const auto &inst : load_instances(spec)) {
        const auto &f = inst.formula;
        auto cfg = engine_config(spec, f.num_vars());
        SolveResult res = cfg.kind == EngineKind::kDpll ? dpll_solve(f, cfg) : dnc_ppsz_solve(f, cfg);
        bool model_ok = res.verdict != SolveVerdict::kSat || f.satisfied_by(res.assignment);
        r.failed |= !model_ok;
        r.records.push_back({{"instance", inst.id},
                             {"n", f.num_vars()},
                             {"m", f.num_clauses()},
                             {"engine", spec.engine},
                             {"verdict", verdict_name(res.verdict)},
                             {"assignment", bits_text(res.assignment)},
                             {"model_checked", model_ok},
                             {"stats", stats_json(res.stats)}});
    }
    return r;
}

Result cmd_tree_stats(const Spec &spec) {
    Result r;
    for (const auto &inst : load_instances(spec)) {
        const auto &f = inst.formula;
        auto tree = build_search_tree(f, engine_config(spec, f.num_vars()));
        auto lb = leaves_bound_check(tree.shape);
        r.failed |= !lb.holds;
        r.records.push_back({{"instance", inst.id},
                             {"n", f.num_vars()},
                             {"stats", stats_json(tree.stats)},
                             {"leaves_bound", {{"holds", lb.holds}, {"lower", lb.lower}, {"upper", lb.upper}}}});
    }
    return r;
}

Result cmd_decompose(const Spec &spec) {
    if (spec.measure != "height" && spec.measure != "branching") {
        throw SpecError("--measure is height or branching");
    }
    Result r;
    for (const auto &inst : load_instances(spec)) {
        auto tree = build_search_tree(inst.formula, engine_config(spec, inst.formula.num_vars()));
        auto measure = spec.measure == "height" ? SizeMeasure::kHeight : SizeMeasure::kBranching;
        int top = measure == SizeMeasure::kHeight ? tree.shape.height() : tree.shape.max_branching();
        int budget = spec.budget ? *spec.budget : (int)std::lround(spec.kappa.value_or(0.5) * top);
        auto d = decompose(tree.shape, measure, budget);
        r.records.push_back({{"instance", inst.id},
                             {"measure", spec.measure},
                             {"budget", budget},
                             {"total_size", d.total_size},
                             {"top_size", d.top_size},
                             {"subtrees", d.subtree_count()},
                             {"nontrivial_subtrees", d.nontrivial_count()},
                             {"subtree_total", d.subtree_total()},
                             {"extended_j", d.extended_j},
                             {"hybrid_sqrt", hybrid_query_count(d, Phi::kSqrt)},
                             {"hybrid_grover_branch", hybrid_query_count(d, Phi::kGroverBranch)},
                             {"classical", hybrid_query_count(d, Phi::kClassical)}});
    }
    return r;
}

Result cmd_fit_exponent(const Spec &spec) {
    std::vector<double> lambdas = spec.lambda ? std::vector<double>{*spec.lambda} : std::vector<double>{0.5, 0.8, 1.0};
    std::vector<double> kappas = spec.kappa ? std::vector<double>{*spec.kappa} : std::vector<double>{0.25, 0.5};
    int lo = spec.n_from > 0 ? spec.n_from : 16, hi = spec.n_to > 0 ? spec.n_to : 28;
    if (lo > hi - 2) {
        throw SpecError("need at least three sizes");
    }
    Result r;
    json fits = json::array();
    for (double lambda : lambdas) {
        for (double kp : kappas) {
            auto fit = hybrid_exponent_fit(lambda, kp, lo, hi);
            for (std::size_t i = 0; i < fit.ns.size(); i++) {
                r.records.push_back(
                    {{"lambda", lambda}, {"kappa_prime", kp}, {"n", fit.ns[i]}, {"log2_queries", fit.log2_values[i]}});
            }
            double dev = std::abs(fit.fit.slope - fit.predicted);
            fits.push_back({{"lambda", lambda},
                            {"kappa_prime", kp},
                            {"slope", fit.fit.slope},
                            {"predicted", fit.predicted},
                            {"deviation", dev},
                            {"rms_residual", fit.fit.rms_residual}});
        }
    }
    r.aggregate["fits"] = fits;
    return r;
}

Result cmd_qwalk_detect(const Spec &spec) {
    Result r;
    std::mt19937_64 rng(spec.need_seed());
    double delta = spec.delta.value_or(0.1);
    int agree = 0;
    for (const auto &inst : load_instances(spec)) {
        auto st = build_search_tree(inst.formula, EngineConfig::dpll());
        auto walk = WalkTree::from_search_tree(st, inst.formula.num_vars());
        auto det = detect_marked(walk, delta, spec.trials.value_or(0), default_detection_config(), rng);
        bool truth = st.stats.sat_leaves > 0;
        bool said = det.verdict == DetectionVerdict::kMarkedExists;
        agree += truth == said;
        r.records.push_back({{"instance", inst.id},
                             {"tree_size", st.stats.size},
                             {"verdict", said ? "marked" : "none"},
                             {"classical", truth ? "marked" : "none"},
                             {"acceptances", det.acceptances},
                             {"k", det.k},
                             {"precision", det.precision}});
    }
    r.aggregate["agreements"] = agree;
    r.aggregate["instances"] = r.records.size();
    return r;
}

Result cmd_grover(const Spec &spec) {
    Result r;
    for (const auto &inst : load_instances(spec)) {
        const auto &f = inst.formula;
        if (f.num_vars() > 16) {
            throw std::length_error("grover simulation handles at most 16 variables");
        }
        std::uint64_t m = count_solutions(f);
        int k = spec.iterations.value_or(grover_optimal_iterations(f.num_vars(), m));
        auto g = grover_search(f, k);
        double closed = grover_closed_form(f.num_vars(), m, k);
        double diff = std::abs(g.success_probability - closed);
        r.failed |= diff > 1e-6;
        r.records.push_back({{"instance", inst.id},
                             {"n", f.num_vars()},
                             {"solutions", m},
                             {"iterations", k},
                             {"oracle_calls", g.oracle_calls},
                             {"success_probability", g.success_probability},
                             {"closed_form", closed},
                             {"deviation", diff},
                             {"most_likely", bits_text(g.assignment)},
                             {"most_likely_satisfies", f.satisfied_by(g.assignment)}});
    }
    return r;
}

Result cmd_qpe_compare(const Spec &spec) {
    Result r;
    std::mt19937_64 rng(spec.need_seed());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < spec.trials.value_or(100); trial++) {
        int t = spec.t.value_or(1 + (int)(rng() % 6));
        int wires = 1 + (int)(rng() % 3);
        double theta = unit(rng);
        auto e = random_eigen_pair(wires, theta, rng);
        auto a = qpe_standard(e.unitary, e.eigenstate, t);
        auto b = qpe_counter(e.unitary, e.eigenstate, t);
        double diff = std::abs(a.probability - b.probability);
        worst = std::max(worst, diff);
        int expected_wires = 1 + (int)std::ceil(std::log2((double)t) - 1e-12);
        r.failed |= diff > 1e-9 || b.ancilla_wires != expected_wires;
        r.records.push_back({{"trial", trial},
                             {"t", t},
                             {"wires", wires},
                             {"theta", theta},
                             {"p_standard", a.probability},
                             {"p_counter", b.probability},
                             {"closed_form", qpe_zero_closed_form(theta, t)},
                             {"deviation", diff},
                             {"counter_ancillas", b.ancilla_wires}});
    }
    r.aggregate["max_deviation"] = worst;
    return r;
}

Result cmd_sia_run(const Spec &spec) {
    Result r;
    Advice advice;
    try {
        advice = parse_advice(spec.advice);
    } catch (const std::invalid_argument &e) {
        throw SpecError(e.what());
    }
    for (const auto &inst : load_instances(spec)) {
        const auto &f = inst.formula;
        int w = spec.w.value_or(std::max(1, index_width(f)));
        auto ref = sia_reference(f, advice, spec.s);
        SiarRun run;
        try {
            run = siar_execute(f, advice, w, spec.s);
        } catch (const std::invalid_argument &e) {
            throw SpecError(e.what());
        }
        bool agree = run.outcome.status == ref.status && run.outcome.advice_consumed == ref.advice_consumed;
        r.failed |= !agree;
        auto acct = resource_account(std::max(1, f.num_vars()), w, spec.s, std::max(1, formula_degree(f)));
        r.records.push_back({{"instance", inst.id},
                             {"n", f.num_vars()},
                             {"w", w},
                             {"s", spec.s},
                             {"status", status_name(run.outcome.status)},
                             {"flag", run.outcome.flag()},
                             {"advice_consumed", run.outcome.advice_consumed},
                             {"reference_status", status_name(ref.status)},
                             {"agree", agree},
                             {"blocks", run.layout.blocks},
                             {"k", run.layout.k},
                             {"block_calls", run.calls},
                             {"peak_live", run.peak_live},
                             {"cell_bits", run.layout.cell_bits()},
                             {"space_bits", acct.space},
                             {"time_estimate", acct.time}});
    }
    return r;
}

Result cmd_pebble_schedule(const Spec &spec) {
    if (spec.k < 0 || spec.k > 12) {
        throw SpecError("--k must lie in 0..12");
    }
    Result r;
    auto sched = siar_schedule(spec.k);
    for (std::size_t i = 0; i < sched.size(); i++) {
        const auto &st = sched[i];
        r.records.push_back({{"line", i + 1},
                             {"block", st.block},
                             {"source", st.source},
                             {"target", st.target},
                             {"text", schedule_text({st}).substr(0, schedule_text({st}).size() - 1)}});
    }
    r.aggregate["k"] = spec.k;
    r.aggregate["length"] = sched.size();
    r.aggregate["expected_length"] = std::pow(3.0, spec.k);
    return r;
}

Result cmd_lattice_reduce(const Spec &spec) {
    auto instances = load_instances(spec);
    if ((!spec.lattice_out.empty() || !spec.cnf_out.empty()) && instances.size() != 1) {
        throw SpecError("--lattice-out and --cnf-out need exactly one instance");
    }
    Result r;
    for (const auto &inst : instances) {
        LatticeReduction red;
        try {
            red = reduce_3sat_to_lattice(inst.formula);
        } catch (const std::invalid_argument &e) {
            throw SpecError(inst.id + ": " + e.what());
        }
        auto lat = compact_lattice_cnf(red.instance);
        bool valid = validate_lattice(red.instance).ok;
        int width = index_width(lattice_to_cnf(red.instance));
        bool width_ok = width <= red.instance.side + 1;
        r.failed |= !valid || !width_ok;
        json rec{{"instance", inst.id},
                 {"n", inst.formula.num_vars()},
                 {"padded_n", red.artifacts.padded.num_vars()},
                 {"padded_clauses", red.artifacts.padded.num_clauses()},
                 {"side", red.instance.side},
                 {"side_per_nl", red.artifacts.side_per_nl},
                 {"constraints", red.instance.constraints.size()},
                 {"constrained_points", lat.points.size()},
                 {"chains", red.artifacts.chains.size()},
                 {"crossings", red.artifacts.crossings.size()},
                 {"index_width", width},
                 {"valid", valid}};
        if (spec.check) {
            auto eq = equisat_check(inst.formula, red.instance);
            rec["source_verdict"] = verdict_name(eq.source);
            rec["lattice_verdict"] = verdict_name(eq.lattice);
            rec["equisatisfiable"] = eq.agree;
            r.failed |= !eq.agree;
        }
        r.records.push_back(rec);
        if (!spec.lattice_out.empty()) {
            std::ofstream(spec.lattice_out) << lattice_to_json(red.instance) << "\n";
        }
        if (!spec.cnf_out.empty()) {
            std::ofstream(spec.cnf_out) << to_dimacs(lat.formula);
        }
    }
    return r;
}

Result cmd_seth_hybrid(const Spec &spec) {
    double kappa = spec.kappa.value_or(0.5);
    Result r;
    if (!spec.inputs.empty() || !spec.random.empty()) {
        for (const auto &inst : load_instances(spec)) {
            auto rep = seth_hybrid(inst.formula, kappa, spec.need_seed());
            r.records.push_back({{"instance", inst.id},
                                 {"n", rep.n},
                                 {"prefix_bits", rep.prefix_bits},
                                 {"suffix_bits", rep.suffix_bits},
                                 {"subcubes", rep.subcubes},
                                 {"oracle_queries", rep.oracle_queries},
                                 {"checks", rep.checks},
                                 {"predicted_queries", rep.predicted_queries},
                                 {"found", rep.found},
                                 {"assignment", bits_text(rep.assignment)}});
            r.failed |= rep.found && !inst.formula.satisfied_by(rep.assignment);
        }
        return r;
    }
    int lo = spec.n_from > 0 ? spec.n_from : 16, hi = spec.n_to > 0 ? spec.n_to : 20;
    if (lo > hi - 2) {
        throw SpecError("need at least three sizes");
    }
    auto fit = seth_exponent_fit(lo, hi, kappa, spec.need_seed());
    for (std::size_t i = 0; i < fit.ns.size(); i++) {
        r.records.push_back({{"n", fit.ns[i]},
                             {"log2_queries", fit.log2_values[i]},
                             {"log2_predicted", (1 - kappa / 2) * fit.ns[i]}});
    }
    r.aggregate = {{"kappa", kappa},
                   {"slope", fit.fit.slope},
                   {"predicted", fit.predicted},
                   {"deviation", std::abs(fit.fit.slope - fit.predicted)}};
    return r;
}

void require_finite(const json &j, const std::string &path) {
    if (j.is_number_float() && !std::isfinite(j.get<double>())) {
        throw std::logic_error("non-finite value at " + path);
    }
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            require_finite(it.value(), path + "." + it.key());
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); i++) {
            require_finite(j[i], path + "[" + std::to_string(i) + "]");
        }
    }
}

std::string csv_cell(const json &v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    }
    return v.dump();
}

// Records flattened one level deep (nested objects as parent.child).
std::string to_csv(const json &records) {
    std::vector<std::string> header;
    std::vector<std::vector<std::pair<std::string, json>>> rows;
    for (const auto &rec : records) {
        std::vector<std::pair<std::string, json>> row;
        for (auto it = rec.begin(); it != rec.end(); ++it) {
            if (it.value().is_object()) {
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
                    row.push_back({it.key() + "." + jt.key(), jt.value()});
                }
            } else {
                row.push_back({it.key(), it.value()});
            }
        }
        for (const auto &[key, _] : row) {
            if (std::find(header.begin(), header.end(), key) == header.end()) {
                header.push_back(key);
            }
        }
        rows.push_back(std::move(row));
    }
    std::string out;
    for (std::size_t i = 0; i < header.size(); i++) {
        out += (i ? "," : "") + header[i];
    }
    out += "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < header.size(); i++) {
            auto it = std::find_if(row.begin(), row.end(), [&](const auto &p) { return p.first == header[i]; });
            out += (i ? "," : "") + (it == row.end() ? std::string() : csv_cell(it->second));
        }
        out += "\n";
    }
    return out;
}

Result dispatch(const Spec &spec) {
    if (spec.command == "solve") return cmd_solve(spec);
    if (spec.command == "tree-stats") return cmd_tree_stats(spec);
    if (spec.command == "decompose") return cmd_decompose(spec);
    if (spec.command == "fit-exponent") return cmd_fit_exponent(spec);
    if (spec.command == "qwalk-detect") return cmd_qwalk_detect(spec);
    if (spec.command == "grover") return cmd_grover(spec);
    if (spec.command == "qpe-compare") return cmd_qpe_compare(spec);
    if (spec.command == "sia-run") return cmd_sia_run(spec);
    if (spec.command == "pebble-schedule") return cmd_pebble_schedule(spec);
    if (spec.command == "lattice-reduce") return cmd_lattice_reduce(spec);
    if (spec.command == "seth-hybrid") return cmd_seth_hybrid(spec);
    throw SpecError("unknown command " + spec.command);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hybridts experiment harness"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", HYBRIDTS_VERSION);
    Spec spec;
    app.add_option("--input", spec.inputs, "DIMACS input files");
    app.add_option("--random", spec.random, "Seeded random 3-CNF, N:M");
    app.add_option("--seed", spec.seed, "Random seed (required by randomized commands)");
    app.add_option("--out", spec.out, "Report path (stdout when empty)");
    app.add_option("--format", spec.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--kappa", spec.kappa, "Quantum fraction");
    app.add_option("--lambda", spec.lambda, "Tree density");
    app.add_option("--budget", spec.budget, "Guess or decomposition budget");
    app.add_option("--s", spec.s, "Clauses per implication")->check(CLI::PositiveNumber);
    app.add_option("--w", spec.w, "Block width")->check(CLI::PositiveNumber);
    app.add_option("--delta", spec.delta, "Detection failure probability");
    app.add_option("--trials", spec.trials, "Repetitions");
    app.add_flag("--timing", spec.timing, "Add wall time to the report");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"solve", "Solve DIMACS instances"},
        {"tree-stats", "Search tree statistics and the leaves bound"},
        {"decompose", "Split the search tree into top tree and subtrees"},
        {"fit-exponent", "Hybrid query exponent on uniform trees"},
        {"qwalk-detect", "Quantum walk detection against the classical verdict"},
        {"grover", "Grover search against the closed form"},
        {"qpe-compare", "Standard and counter phase estimation"},
        {"sia-run", "Reversible s-implication with advice"},
        {"pebble-schedule", "Pebbling schedule over 2^k blocks"},
        {"lattice-reduce", "3-SAT to Lattice SAT"},
        {"seth-hybrid", "Brute force plus Grover query exponent"},
    };
    for (const auto &[name, help] : commands) {
        auto *sub = app.add_subcommand(name, help);
        sub->callback([&spec, name = name] { spec.command = name; });
        if (name == "solve" || name == "tree-stats" || name == "decompose") {
            sub->add_option("--engine", spec.engine, "dpll or dncppsz");
        }
        if (name == "decompose") {
            sub->add_option("--measure", spec.measure, "height or branching");
        }
        if (name == "fit-exponent" || name == "seth-hybrid") {
            sub->add_option("--n-from", spec.n_from, "Smallest n");
            sub->add_option("--n-to", spec.n_to, "Largest n");
        }
        if (name == "grover") {
            sub->add_option("--iterations", spec.iterations, "Grover iterations (default optimal)");
        }
        if (name == "qpe-compare") {
            sub->add_option("--t", spec.t, "Estimate wires (default random 1..6)");
        }
        if (name == "sia-run") {
            sub->add_option("--advice", spec.advice, "Advice bits");
        }
        if (name == "pebble-schedule") {
            sub->add_option("--k", spec.k, "Levels");
        }
        if (name == "lattice-reduce") {
            sub->add_flag("--check", spec.check, "Run the equisatisfiability check");
            sub->add_option("--lattice-out", spec.lattice_out, "Write the lattice instance as JSON");
            sub->add_option("--cnf-out", spec.cnf_out, "Write the lattice CNF as DIMACS");
        }
    }
    CLI11_PARSE(app, argc, argv);

    auto start = std::chrono::steady_clock::now();
    Result result;
    try {
        result = dispatch(spec);
        require_finite(result.records, "records");
        require_finite(result.aggregate, "aggregate");
    } catch (const SpecError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error &e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    json report;
    report["schema"] = kSchema;
    report["version"] = HYBRIDTS_VERSION;
    report["spec"] = spec.echo();
    report["records"] = result.records;
    report["aggregate"] = result.aggregate;
    report["hard_failure"] = result.failed;
    if (spec.timing) {
        report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    std::string text = spec.format == "csv" ? to_csv(result.records) : report.dump(2) + "\n";
    if (spec.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(spec.out);
        if (!out) {
            std::cerr << "error: cannot write " << spec.out << "\n";
            return 2;
        }
        out << text;
    }
    return result.failed ? 1 : 0;
}
