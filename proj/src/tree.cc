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

#include "hybridts/tree.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hybridts {

int Tree::add(int par, bool is_marked) {
    int v = size();
    if (par < 0 && v != 0) {
        throw std::invalid_argument("a tree has one root");
    }
    if (par >= v) {
        throw std::invalid_argument("parent must precede child");
    }
    parent.push_back(par);
    children.emplace_back();
    marked.push_back(is_marked);
    if (par >= 0) {
        if (children[par].size() >= 2) {
            throw std::invalid_argument("at most two children");
        }
        children[par].push_back(v);
    }
    return v;
}

std::vector<int> Tree::depths() const {
    std::vector<int> d(size(), 0);
    for (int v = 1; v < size(); v++) {
        d[v] = d[parent[v]] + 1;
    }
    return d;
}

std::vector<int> Tree::heights() const {
    std::vector<int> h(size(), 0);
    for (int v = size() - 1; v > 0; v--) {
        h[parent[v]] = std::max(h[parent[v]], h[v] + 1);
    }
    return h;
}

std::vector<int> Tree::branchings() const {
    std::vector<int> b(size(), 0);
    for (int v = size() - 1; v >= 0; v--) {
        int best = 0;
        for (int c : children[v]) {
            best = std::max(best, b[c]);
        }
        b[v] = best + (children[v].size() == 2 ? 1 : 0);
    }
    return b;
}

std::vector<int> Tree::subtree_sizes() const {
    std::vector<int> s(size(), 1);
    for (int v = size() - 1; v > 0; v--) {
        s[parent[v]] += s[v];
    }
    return s;
}

int Tree::leaf_count() const {
    int k = 0;
    for (const auto &c : children) {
        k += c.empty();
    }
    return k;
}

int Tree::height() const {
    return size() == 0 ? 0 : heights()[0];
}

int Tree::max_branching() const {
    return size() == 0 ? 0 : branchings()[0];
}

Tree Tree::subtree(int v) const {
    Tree out;
    std::function<void(int, int)> copy = [&](int u, int par) {
        int w = out.add(par, marked[u]);
        for (int c : children[u]) {
            copy(c, w);
        }
    };
    copy(v, -1);
    return out;
}

Tree Tree::complete_binary(int height) {
    Tree t;
    std::function<void(int, int)> grow = [&](int par, int remaining) {
        int v = t.add(par);
        if (remaining > 0) {
            grow(v, remaining - 1);
            grow(v, remaining - 1);
        }
    };
    grow(-1, height);
    return t;
}

Tree Tree::path(int num_vertices) {
    Tree t;
    for (int k = 0; k < num_vertices; k++) {
        t.add(k - 1);
    }
    return t;
}

Tree Tree::comb(int levels) {
    Tree t;
    int spine = t.add(-1);
    for (int k = 0; k < levels; k++) {
        t.add(spine);
        spine = t.add(spine);
    }
    return t;
}

}  // namespace hybridts
