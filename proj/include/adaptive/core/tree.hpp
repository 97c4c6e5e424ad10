// Copyright 2026 The Adaptive Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADAPTIVE_CORE_TREE_HPP_
#define ADAPTIVE_CORE_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adaptive {

inline constexpr int kMaxTreeDepth = 26;

// Nodes of a complete binary tree are stored in heap order. Level t (1-based)
// holds 2^(t-1) nodes addressed by the sign path eps_1..eps_{t-1}; sign -1 goes
// to the left child (2i+1), +1 to the right child (2i+2).
inline std::size_t tree_node_count(int depth) {
  if (depth < 1 || depth > kMaxTreeDepth) {
    throw std::invalid_argument("tree: depth must be in [1, " + std::to_string(kMaxTreeDepth) + "]");
  }
  return (std::size_t{1} << depth) - 1;
}

inline std::size_t tree_node_index(int level, std::span<const int> path) {
  if (level < 1 || path.size() != static_cast<std::size_t>(level - 1)) {
    throw std::invalid_argument("tree: path length must equal level - 1");
  }
  std::size_t idx = 0;
  for (int s : path) {
    if (s != -1 && s != 1) throw std::invalid_argument("tree: path entries must be -1 or +1");
    idx = 2 * idx + (s < 0 ? 1 : 2);
  }
  return idx;
}

// Full sign paths are encoded as integers: bit s (from the low end) is 1 iff
// eps_{s+1} = +1. Returns the level-by-level node indices along the path.
inline void path_nodes(std::uint64_t code, int depth, std::span<std::size_t> out) {
  std::size_t idx = 0;
  for (int t = 0; t < depth; ++t) {
    out[t] = idx;
    idx = 2 * idx + (((code >> t) & 1U) ? 2 : 1);
  }
}

inline int path_sign(std::uint64_t code, int t) { return ((code >> t) & 1U) ? 1 : -1; }

// Depth-n tree decorated with values; z_t(eps) depends only on eps_{1:t-1}.
template <class T>
class BinaryTree {
 public:
  BinaryTree(int depth, std::vector<T> nodes) : depth_(depth), nodes_(std::move(nodes)) {
    if (nodes_.size() != tree_node_count(depth_)) {
      throw std::invalid_argument("tree: node count must be 2^depth - 1");
    }
  }

  // Every node set to `fill`.
  static BinaryTree constant(int depth, const T& fill) {
    return BinaryTree(depth, std::vector<T>(tree_node_count(depth), fill));
  }

  int depth() const { return depth_; }
  std::size_t size() const { return nodes_.size(); }

  const T& get(int level, std::span<const int> path) const {
    if (level > depth_) throw std::invalid_argument("tree: level exceeds depth");
    return nodes_[tree_node_index(level, path)];
  }

  const T& node(std::size_t index) const { return nodes_.at(index); }
  T& node(std::size_t index) { return nodes_.at(index); }
  const std::vector<T>& nodes() const { return nodes_; }

 private:
  int depth_;
  std::vector<T> nodes_;
};

template <class T>
const T& tree_get(const BinaryTree<T>& tree, int level, std::span<const int> path) {
  return tree.get(level, path);
}

}  // namespace adaptive

#endif  // ADAPTIVE_CORE_TREE_HPP_
