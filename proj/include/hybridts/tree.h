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

#ifndef HYBRIDTS_TREE_H
#define HYBRIDTS_TREE_H

#include <string>
#include <vector>

namespace hybridts {

/// Rooted tree with at most two children per vertex, stored in depth-first
/// preorder (vertex 0 is the root, parents precede children, the 0-branch
/// child precedes the 1-branch child).
struct Tree {
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    std::vector<bool> marked;

    int size() const {
        return (int)parent.size();
    }
    /// Appends a vertex under `par` (-1 for the root) and returns its index.
    int add(int par, bool is_marked = false);

    std::vector<int> depths() const;
    /// Longest root-to-leaf distance below each vertex.
    std::vector<int> heights() const;
    /// Largest number of two-child vertices on a path from each vertex down to a leaf.
    std::vector<int> branchings() const;
    std::vector<int> subtree_sizes() const;
    int leaf_count() const;
    int height() const;
    int max_branching() const;
    /// Copy of the subtree rooted at v, reindexed in preorder.
    Tree subtree(int v) const;

    static Tree complete_binary(int height);
    static Tree path(int num_vertices);
    /// Spine of `levels` branch vertices, each with one leaf child.
    static Tree comb(int levels);
};

}  // namespace hybridts

#endif
