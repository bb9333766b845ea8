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

#include "hybridts/decomposition.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hybridts/treesearch.h"

using namespace hybridts;

namespace {

Tree random_tree(std::mt19937_64 &rng, int max_vertices) {
    Tree t;
    auto grow = [&](auto &&self, int par, int depth) -> void {
        int v = t.add(par);
        if (t.size() >= max_vertices || depth > 12) {
            return;
        }
        int r = (int)(rng() % 10);
        int kids = r < 3 ? 0 : r < 6 ? 1 : 2;
        for (int k = 0; k < kids && t.size() < max_vertices; k++) {
            self(self, v, depth + 1);
        }
    };
    grow(grow, -1, 0);
    return t;
}

// Comb spine of `spine` branch vertices ending in a complete tree of height `bottom`.
Tree planted_dense_bottom(int spine, int bottom) {
    Tree t;
    int v = t.add(-1);
    for (int k = 0; k < spine; k++) {
        t.add(v);
        v = t.add(v);
    }
    auto grow = [&](auto &&self, int par, int remaining) -> void {
        if (remaining == 0) {
            return;
        }
        for (int k = 0; k < 2; k++) {
            int c = t.add(par);
            self(self, c, remaining - 1);
        }
    };
    grow(grow, v, bottom);
    return t;
}

}  // namespace

TEST_SUITE("decomposition") {
TEST_CASE("complete tree split in the middle") {
    Tree t = Tree::complete_binary(4);
    auto d = decompose(t, SizeMeasure::kHeight, 2);
    CHECK(d.top_size == 3);
    REQUIRE(d.cutoffs.size() == 4);
    for (const auto &c : d.cutoffs) {
        CHECK(c.size == 7);
    }
    CHECK(d.top_size + d.subtree_total() == 31);
    CHECK(hybrid_query_count(d, Phi::kSqrt) == doctest::Approx(3 + 4 * std::sqrt(7.0)).epsilon(1e-12));
    CHECK(hybrid_query_count(d, Phi::kSqrt) == doctest::Approx(13.583).epsilon(1e-4));
    CHECK(hybrid_query_count(d, Phi::kClassical) == 31.0);
}

TEST_CASE("budget at or above the root gives one subtree") {
    Tree t = Tree::complete_binary(3);
    for (int b : {3, 7}) {
        auto d = decompose(t, SizeMeasure::kHeight, b);
        CHECK(d.top_size == 0);
        REQUIRE(d.cutoffs.size() == 1);
        CHECK(d.cutoffs[0].size == t.size());
    }
}

TEST_CASE("comb has one nontrivial subtree") {
    Tree t = Tree::comb(10);
    auto d = decompose(t, SizeMeasure::kHeight, 3);
    CHECK(d.nontrivial_count() == 1);
    CHECK(d.subtree_count() - d.nontrivial_count() >= 6);
    CHECK(d.top_size + d.subtree_total() == t.size());
    // A negative budget leaves no subtrees; every leaf adds two empty trees.
    auto none = decompose(t, SizeMeasure::kHeight, -1);
    CHECK(none.top_size == t.size());
    CHECK(none.extended_j == 2 * t.leaf_count());
}

TEST_CASE("decomposition identities on random trees") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 300; trial++) {
        Tree t = random_tree(rng, 400);
        for (auto measure : {SizeMeasure::kHeight, SizeMeasure::kBranching}) {
            std::int64_t prev_top = t.size() + 1;
            auto m = measure == SizeMeasure::kHeight ? t.heights() : t.branchings();
            for (int b = 0; b <= t.height() + 1; b++) {
                auto d = decompose(t, measure, b);
                CHECK(d.top_size + d.subtree_total() == t.size());
                CHECK(d.top_size <= prev_top);
                prev_top = d.top_size;
                for (const auto &c : d.cutoffs) {
                    CHECK(m[c.root] <= b);
                    if (t.parent[c.root] >= 0) {
                        CHECK(m[t.parent[c.root]] > b);
                    }
                }
                double q = hybrid_query_count(d, Phi::kSqrt);
                double cl = hybrid_query_count(d, Phi::kClassical);
                CHECK(q <= cl + 1e-9);
                bool all_small = true;
                for (const auto &c : d.cutoffs) {
                    all_small = all_small && c.size <= 1;
                }
                CHECK((std::abs(q - cl) < 1e-9) == all_small);
                CHECK(hybrid_query_count(d, Phi::kGroverBranch) <= cl + 1e-9);
            }
        }
    }
}

TEST_CASE("phi never exceeds size") {
    for (int size = 1; size < 5000; size += 7) {
        for (int br = 0; br < 40; br += 3) {
            SubtreeInfo s{0, size, br, br, 1};
            for (auto phi : {Phi::kSqrt, Phi::kGroverBranch, Phi::kClassical}) {
                CHECK(phi_value(phi, s) <= size);
            }
        }
    }
}

TEST_CASE("equal subtrees maximise the concave cost") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; trial++) {
        int j = 2 + (int)(rng() % 5);
        int total = j * (1 + (int)(rng() % 50));
        std::vector<int> parts(j, 1);
        for (int r = j; r < total; r++) {
            parts[rng() % j]++;
        }
        double spread = 0;
        for (int p : parts) {
            spread += std::sqrt((double)p);
        }
        CHECK(spread <= j * std::sqrt((double)total / j) + 1e-9);
    }
}

TEST_CASE("split at half the height of a complete tree") {
    for (int n = 10; n <= 18; n += 2) {
        Tree t = Tree::complete_binary(n);
        double th = hybrid_query_count(decompose(t, SizeMeasure::kHeight, n / 2), Phi::kSqrt);
        // Constant-factor agreement with 2^(0.75 n).
        CHECK(std::abs(std::log2(th) - 0.75 * n) < 1.0);
    }
}

TEST_CASE("leaves bound") {
    auto full = leaves_bound_check(Tree::complete_binary(2));
    CHECK(full.leaves == 4);
    CHECK(full.upper == 4.0);
    CHECK(full.holds);
    auto path = leaves_bound_check(Tree::path(9));
    CHECK(path.leaves == 1);
    CHECK(path.lower == 1.0);
    CHECK(path.holds);
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 300; trial++) {
        CHECK(leaves_bound_check(random_tree(rng, 300)).holds);
    }
}

TEST_CASE("metatheorem conditions") {
    std::vector<SeriesPoint> complete, chain;
    for (int n = 8; n <= 16; n++) {
        complete.push_back({n, decompose(Tree::complete_binary(n), SizeMeasure::kHeight, n - 2)});
        chain.push_back({n, decompose(Tree::comb(n), SizeMeasure::kHeight, 0)});
    }
    auto rc = check_metatheorem_conditions(complete, Phi::kSqrt, 1.0, 0.5);
    CHECK(rc.fitted_lambda == doctest::Approx(1.0).epsilon(0.02));
    CHECK(rc.fitted_delta == doctest::Approx(0.5).epsilon(0.02));
    CHECK(rc.condition_large_subtrees);
    CHECK(rc.condition_phi_speedup);
    auto rchain = check_metatheorem_conditions(chain, Phi::kSqrt, 1.0, 0.5);
    for (const auto &p : chain) {
        CHECK((double)p.decomposition.subtree_total() / p.decomposition.extended_j == 1.0);
    }
    CHECK(std::abs(rchain.fitted_lambda) < 1e-9);
    CHECK(!rchain.condition_large_subtrees);
    std::vector<SeriesPoint> two(complete.begin(), complete.begin() + 2);
    CHECK_THROWS_AS(check_metatheorem_conditions(two, Phi::kSqrt, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("density scans") {
    auto full = uniform_density_scan(Tree::complete_binary(12), 0.5);
    CHECK(full.scanned > 0);
    CHECK(full.min_density == doctest::Approx(1.0));
    CHECK(full.max_density == doctest::Approx(1.0));
    CHECK(full.branching_min_density == doctest::Approx(1.0));
    CHECK(full.fraction_exponential == 1.0);
    double previous = 1.0;
    for (int n : {16, 32, 64, 128}) {
        auto comb = uniform_density_scan(Tree::comb(n), 0.5);
        CHECK(comb.max_density < previous);
        previous = comb.max_density;
    }
    CHECK(previous < 0.1);
    auto mixed = uniform_density_scan(planted_dense_bottom(24, 8), 0.25);
    CHECK(mixed.fraction_exponential > 0);
    CHECK(mixed.fraction_exponential >= 1.0 / (32.0 * 32.0));
    CHECK(mixed.min_density < 0.5);
    CHECK_THROWS_AS(uniform_density_scan(Tree::path(3), 0.0), std::invalid_argument);
}

TEST_CASE("predicted exponent") {
    CHECK(predicted_exponent(1, 1) == 0.5);
    CHECK(predicted_exponent(0, 1) == 1.0);
    CHECK(predicted_exponent(0.5, 1) == 0.75);
}

TEST_CASE("advice and block fractions") {
    auto p = sia_region_feasible(0.5, 0.5, 0.01);
    REQUIRE(p.has_value());
    CHECK(std::log2(1 / p->zeta) * p->zeta <= (1 - p->beta - 0.01) * 0.5);
    CHECK(p->beta * 0.5 < 2 * 0.5 * p->zeta);
    double previous = 1.0;
    for (double kappa = 1.0; kappa > 0.049; kappa -= 0.05) {
        auto q = sia_region_feasible(kappa, 0.3, 0.01);
        REQUIRE(q.has_value());
        CHECK(sia_region_holds(*q, kappa, 0.3, 0.01));
        CHECK(q->zeta <= previous);
        previous = q->zeta;
    }
    CHECK(previous < 0.05);
    CHECK_THROWS_AS(sia_region_feasible(0, 0.5, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(sia_region_feasible(0.5, -1, 0.01), std::invalid_argument);
}

TEST_CASE("tree size estimation cost") {
    CHECK(tree_size_estimation_cost(1, 16) == doctest::Approx(64.0));
    CHECK_THROWS_AS(tree_size_estimation_cost(0, 16), std::invalid_argument);
    for (int n = 4; n <= 20; n += 4) {
        double x = tree_size_estimation_crossover(n);
        CHECK(tree_size_estimation_cost(x, n) == doctest::Approx(x));
        CHECK(tree_size_estimation_cost(x * 4, n) < x * 4);
        CHECK(tree_size_estimation_cost(x / 4, n) > x / 4);
    }
}

TEST_CASE("leveled trees match explicit expansion") {
    for (double lambda : {0.5, 0.8, 1.0}) {
        for (int n = 6; n <= 13; n++) {
            LeveledTree lt = LeveledTree::uniform(n, lambda);
            Tree t = lt.expand();
            CHECK(lt.size() == doctest::Approx((double)t.size()));
            for (auto measure : {SizeMeasure::kHeight, SizeMeasure::kBranching}) {
                for (int b = 0; b <= n; b++) {
                    auto a = lt.decompose(measure, b);
                    auto e = decompose(t, measure, b);
                    CHECK(a.top_size == e.top_size);
                    CHECK(a.subtree_count() == e.subtree_count());
                    CHECK(a.subtree_total() == e.subtree_total());
                    CHECK(hybrid_query_count(a, Phi::kSqrt) ==
                          doctest::Approx(hybrid_query_count(e, Phi::kSqrt)).epsilon(1e-12));
                    CHECK(hybrid_query_count(a, Phi::kGroverBranch) ==
                          doctest::Approx(hybrid_query_count(e, Phi::kGroverBranch)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("leaves bound on engine trees") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 100; trial++) {
        int n = 4 + (int)(rng() % 6);
        auto f = random_k_cnf(n, (int)(rng() % (5 * n)), 3, rng);
        auto t = build_search_tree(f, EngineConfig::dpll());
        CHECK(leaves_bound_check(t.shape).holds);
    }
}
}
