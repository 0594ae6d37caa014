#pragma once

// Substructures of the 27-line configuration: tritangent triangles,
// double-sixes, trihedral nines and triple-nines. Line sets are 27-bit masks
// over the canonical vertex order of the degree-3 incidence graph.

#include <array>
#include <cstdint>
#include <vector>

#include "delpezzo/incidence.hpp"

namespace delpezzo {

using LineMask = std::uint32_t;

LineMask mask_of(std::initializer_list<int> lines);
template <class Range>
LineMask mask_of_range(const Range& r) {
  LineMask m = 0;
  for (int x : r) m |= LineMask{1} << x;
  return m;
}
std::vector<int> lines_of(LineMask m);
LineMask image_of(const Permutation& p, LineMask m);

using Triangle = std::array<int, 3>;

struct DoubleSix {
  std::array<int, 6> a;  // ascending
  std::array<int, 6> b;  // b[i] is the partner of a[i]; a[0] < min(b)
  LineMask mask() const { return mask_of_range(a) | mask_of_range(b); }
  bool operator==(const DoubleSix&) const = default;
};

struct TripleNine {
  std::array<LineMask, 3> nines;  // ascending
  bool operator==(const TripleNine&) const = default;
};

// Requires a degree-3 graph; throws std::invalid_argument otherwise.
std::vector<Triangle> enumerate_tritangent_triangles(const IncidenceGraph& g);
std::vector<DoubleSix> enumerate_double_sixes(const IncidenceGraph& g);
// Nine-line sets carrying a 3x3 arrangement of tritangent rows and columns.
std::vector<LineMask> enumerate_trihedral_nines(const IncidenceGraph& g);
std::vector<TripleNine> enumerate_triple_nines(const IncidenceGraph& g);

bool is_tritangent(const IncidenceGraph& g, int a, int b, int c);
bool is_double_six(const IncidenceGraph& g, const DoubleSix& s);

// Images under p, normalized to the canonical representation.
Triangle image_of(const Permutation& p, const Triangle& t);
DoubleSix image_of(const Permutation& p, const DoubleSix& s);
TripleNine image_of(const Permutation& p, const TripleNine& t);

// Number of orbits of the group generated by `gens` on a collection closed
// under it; throws if an image falls outside the collection.
template <class T, class Key>
std::size_t count_orbits(const std::vector<Permutation>& gens, const std::vector<T>& items,
                         Key key);

}  // namespace delpezzo

#include <map>
#include <stdexcept>

namespace delpezzo {

template <class T, class Key>
std::size_t count_orbits(const std::vector<Permutation>& gens, const std::vector<T>& items,
                         Key key) {
  using K = decltype(key(items.front()));
  std::map<K, std::size_t> index;
  for (std::size_t i = 0; i < items.size(); ++i) index.emplace(key(items[i]), i);
  std::vector<bool> seen(items.size(), false);
  std::size_t orbits = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (seen[i]) continue;
    ++orbits;
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        auto it = index.find(key(image_of(g, items[cur])));
        if (it == index.end()) throw std::logic_error("collection not closed under the group");
        if (!seen[it->second]) {
          seen[it->second] = true;
          stack.push_back(it->second);
        }
      }
    }
  }
  return orbits;
}

}  // namespace delpezzo
