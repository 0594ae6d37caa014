#include "delpezzo/incidence.hpp"

namespace delpezzo {

std::vector<int> IncidenceGraph::neighbours(int v, int lab) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w) {
    if (w != v && label(v, w) == lab) out.push_back(w);
  }
  return out;
}

IncidenceGraph build_incidence_graph(const DegreeContext& ctx) {
  IncidenceGraph g;
  g.degree = ctx.degree();
  g.vertices = ctx.exceptional_classes();
  const int n = static_cast<int>(g.vertices.size());
  std::vector<int> labels(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) labels[i * n + j] = ctx.pairing(g.vertices[i], g.vertices[j]);
  }
  g.graph = LabeledGraph(n, std::move(labels));
  return g;
}

PermutationGroup automorphism_group(const IncidenceGraph& g) { return automorphism_group(g.graph); }

Permutation permutation_of_classes(const DegreeContext& ctx,
                                   const std::vector<LatticeVector>& classes,
                                   const std::vector<LatticeVector>& word) {
  std::vector<int> img;
  img.reserve(classes.size());
  for (const auto& v : classes) img.push_back(static_cast<int>(index_of(classes, apply_word(ctx, word, v))));
  return Permutation::from_images(img);
}

std::vector<Permutation> weyl_generators(const DegreeContext& ctx) {
  const auto classes = ctx.exceptional_classes();
  std::vector<Permutation> gens;
  for (const auto& r : ctx.simple_roots()) gens.push_back(permutation_of_classes(ctx, classes, {r}));
  return gens;
}

PermutationGroup weyl_image(const DegreeContext& ctx) {
  auto gens = weyl_generators(ctx);
  const int n = static_cast<int>(ctx.exceptional_classes().size());
  return PermutationGroup::from_generators(n, std::move(gens));
}

}  // namespace delpezzo
