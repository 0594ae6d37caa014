#pragma once

// Complete graphs with integer edge labels, their automorphism groups and
// isomorphisms, by individualization/refinement backtracking.

#include <optional>
#include <vector>

#include "delpezzo/perm_group.hpp"

namespace delpezzo {

class LabeledGraph {
 public:
  LabeledGraph() = default;
  // labels is row-major n x n and must be symmetric.
  LabeledGraph(int n, std::vector<int> labels);

  int size() const { return n_; }
  int label(int i, int j) const { return labels_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<int>& labels() const { return labels_; }

  // Label ids compacted to 0..num_label_ids()-1, same order as the raw labels.
  int label_id(int i, int j) const { return ids_[static_cast<std::size_t>(i) * n_ + j]; }
  int num_label_ids() const { return num_ids_; }

  bool is_automorphism(const Permutation& p) const;

 private:
  int n_ = 0;
  std::vector<int> labels_;
  std::vector<int> ids_;
  int num_ids_ = 0;
};

// Label-preserving vertex permutations.
PermutationGroup automorphism_group(const LabeledGraph& g);

// A bijection f with b.label(f(i), f(j)) == a.label(i, j), if one exists.
std::optional<Permutation> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace delpezzo
