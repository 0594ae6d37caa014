#pragma once

// Incidence graphs of exceptional classes and the groups acting on them.

#include <vector>

#include "delpezzo/labeled_graph.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/perm_group.hpp"

namespace delpezzo {

struct IncidenceGraph {
  int degree = 0;
  std::vector<LatticeVector> vertices;  // canonical (sorted) class order
  LabeledGraph graph;                   // labels = intersection numbers, diagonal -1

  int size() const { return graph.size(); }
  int label(int i, int j) const { return graph.label(i, j); }
  // Vertices meeting v with the given intersection number.
  std::vector<int> neighbours(int v, int label = 1) const;
};

IncidenceGraph build_incidence_graph(const DegreeContext& ctx);

PermutationGroup automorphism_group(const IncidenceGraph& g);

// Simple-root reflections acting on the canonical class list.
std::vector<Permutation> weyl_generators(const DegreeContext& ctx);
PermutationGroup weyl_image(const DegreeContext& ctx);

// Permutation of the classes induced by a lattice map given on classes.
Permutation permutation_of_classes(const DegreeContext& ctx,
                                   const std::vector<LatticeVector>& classes,
                                   const std::vector<LatticeVector>& word);

}  // namespace delpezzo
