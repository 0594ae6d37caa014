#include "delpezzo/labeled_graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace delpezzo {

LabeledGraph::LabeledGraph(int n, std::vector<int> labels) : n_(n), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(n) * n != labels_.size()) {
    throw std::invalid_argument("label matrix size mismatch");
  }
  std::map<int, int> ids;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (label(i, j) != label(j, i)) throw std::invalid_argument("label matrix not symmetric");
      ids.emplace(label(i, j), 0);
    }
  }
  int next = 0;
  for (auto& [lab, id] : ids) id = next++;
  num_ids_ = next;
  ids_.resize(labels_.size());
  for (std::size_t k = 0; k < labels_.size(); ++k) ids_[k] = ids.at(labels_[k]);
}

bool LabeledGraph::is_automorphism(const Permutation& p) const {
  if (p.degree() != n_) return false;
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      if (label(p(i), p(j)) != label(i, j)) return false;
    }
  }
  return true;
}

namespace {

using Cells = std::vector<std::vector<int>>;
using Trace = std::vector<std::uint64_t>;

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h *= 0xFF51AFD7ED558CCDULL;
  return h ^ (h >> 29);
}

// Equitable refinement on per-label neighbour counts. The resulting cell
// sequence is a function of isomorphism-invariant data only.
Trace refine(const LabeledGraph& g, Cells& cells) {
  const int n = g.size();
  const int labs = g.num_label_ids();
  Trace trace;
  std::vector<int> cell_of(n);
  std::vector<std::uint32_t> counts;
  std::vector<std::uint64_t> key(n);
  for (;;) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
    }
    const std::size_t width = cells.size() * labs;
    counts.assign(width, 0);
    for (int v = 0; v < n; ++v) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int w = 0; w < n; ++w) ++counts[cell_of[w] * labs + g.label_id(v, w)];
      std::uint64_t h = 0x12345;
      for (std::size_t k = 0; k < width; ++k) {
        if (counts[k]) h = mix(mix(h, k), counts[k]);
      }
      key[v] = h;
    }
    Cells next;
    next.reserve(n);
    std::uint64_t round = mix(0, cells.size());
    for (auto& cell : cells) {
      std::stable_sort(cell.begin(), cell.end(), [&](int a, int b) { return key[a] < key[b]; });
      std::size_t start = 0;
      for (std::size_t k = 1; k <= cell.size(); ++k) {
        if (k == cell.size() || key[cell[k]] != key[cell[start]]) {
          next.emplace_back(cell.begin() + start, cell.begin() + k);
          std::sort(next.back().begin(), next.back().end());
          round = mix(mix(round, key[cell[start]]), k - start);
          start = k;
        }
      }
    }
    trace.push_back(round);
    const bool stable = next.size() == cells.size();
    cells = std::move(next);
    if (stable) break;
  }
  return trace;
}

Cells individualize(const Cells& cells, std::size_t c, int v) {
  Cells out;
  out.reserve(cells.size() + 1);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k != c) {
      out.push_back(cells[k]);
      continue;
    }
    out.push_back({v});
    std::vector<int> rest;
    for (int x : cells[k]) {
      if (x != v) rest.push_back(x);
    }
    out.push_back(std::move(rest));
  }
  return out;
}

// First non-singleton cell of minimal size, or npos when discrete.
std::size_t target_cell(const Cells& cells) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (cells[c].size() > 1 && (best == static_cast<std::size_t>(-1) || cells[c].size() < cells[best].size())) {
      best = c;
    }
  }
  return best;
}

struct Searcher {
  const LabeledGraph& a;
  const LabeledGraph& b;

  // Both partitions refined and trace-compatible on entry.
  std::optional<Permutation> extend(const Cells& pa, const Cells& pb) const {
    const std::size_t c = target_cell(pa);
    if (c == static_cast<std::size_t>(-1)) {
      std::vector<int> img(a.size());
      for (std::size_t k = 0; k < pa.size(); ++k) img[pa[k][0]] = pb[k][0];
      auto f = Permutation::from_images(img);
      for (int i = 0; i < a.size(); ++i) {
        for (int j = i + 1; j < a.size(); ++j) {
          if (b.label(f(i), f(j)) != a.label(i, j)) return std::nullopt;
        }
      }
      return f;
    }
    const int x = pa[c][0];
    auto na = individualize(pa, c, x);
    const Trace ta = refine(a, na);
    for (int y : pb[c]) {
      auto nb = individualize(pb, c, y);
      if (refine(b, nb) != ta || !same_shape(na, nb)) continue;
      if (auto f = extend(na, nb)) return f;
    }
    return std::nullopt;
  }

  static bool same_shape(const Cells& x, const Cells& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].size() != y[k].size()) return false;
    }
    return true;
  }
};

struct AutResult {
  BigInt order;
  std::vector<Permutation> gens;
};

std::vector<int> orbit_under(int n, const std::vector<Permutation>& gens, int point) {
  std::vector<bool> seen(n, false);
  std::vector<int> orb{point};
  seen[point] = true;
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (const auto& s : gens) {
      const int y = s(orb[k]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  }
  return orb;
}

// Automorphisms fixing the individualized prefix encoded in `cells` (refined).
AutResult stabilizer_search(const LabeledGraph& g, const Cells& cells) {
  const std::size_t c = target_cell(cells);
  if (c == static_cast<std::size_t>(-1)) return {1, {}};
  const int base = cells[c][0];
  auto fixed = individualize(cells, c, base);
  const Trace tfixed = refine(g, fixed);
  AutResult sub = stabilizer_search(g, fixed);
  std::vector<Permutation> gens = sub.gens;
  std::vector<int> orb = orbit_under(g.size(), gens, base);
  std::vector<bool> in_orbit(g.size(), false);
  for (int v : orb) in_orbit[v] = true;
  Searcher s{g, g};
  for (int v : cells[c]) {
    if (in_orbit[v]) continue;
    auto moved = individualize(cells, c, v);
    if (refine(g, moved) != tfixed || !Searcher::same_shape(fixed, moved)) continue;
    if (auto f = s.extend(fixed, moved)) {
      gens.push_back(*f);
      orb = orbit_under(g.size(), gens, base);
      for (int w : orb) in_orbit[w] = true;
    }
  }
  return {sub.order * orb.size(), std::move(gens)};
}

Cells unit_partition(int n) {
  Cells cells(1);
  for (int v = 0; v < n; ++v) cells[0].push_back(v);
  if (n == 0) cells.clear();
  return cells;
}

}  // namespace

PermutationGroup automorphism_group(const LabeledGraph& g) {
  Cells cells = unit_partition(g.size());
  refine(g, cells);
  AutResult r = stabilizer_search(g, cells);
  auto group = PermutationGroup::from_generators(g.size(), std::move(r.gens));
  if (group.order() != r.order) throw std::logic_error("automorphism search: inconsistent order");
  return group;
}

std::optional<Permutation> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.size() != b.size()) return std::nullopt;
  Cells pa = unit_partition(a.size()), pb = unit_partition(b.size());
  if (refine(a, pa) != refine(b, pb) || !Searcher::same_shape(pa, pb)) return std::nullopt;
  return Searcher{a, b}.extend(pa, pb);
}

}  // namespace delpezzo
