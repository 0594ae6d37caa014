#include "delpezzo/schlafli.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace delpezzo {

LineMask mask_of(std::initializer_list<int> lines) { return mask_of_range(lines); }

std::vector<int> lines_of(LineMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

LineMask image_of(const Permutation& p, LineMask m) {
  LineMask out = 0;
  for (int x : lines_of(m)) out |= LineMask{1} << p(x);
  return out;
}

namespace {

void require_cubic(const IncidenceGraph& g) {
  if (g.degree != 3 || g.size() != 27) {
    throw std::invalid_argument("Schlafli structures need the degree-3 graph");
  }
}

DoubleSix normalize(std::array<int, 6> a, std::array<int, 6> b) {
  if (*std::min_element(b.begin(), b.end()) < *std::min_element(a.begin(), a.end())) std::swap(a, b);
  std::array<std::pair<int, int>, 6> pairs;
  for (int i = 0; i < 6; ++i) pairs[i] = {a[i], b[i]};
  std::sort(pairs.begin(), pairs.end());
  DoubleSix s;
  for (int i = 0; i < 6; ++i) {
    s.a[i] = pairs[i].first;
    s.b[i] = pairs[i].second;
  }
  return s;
}

}  // namespace

bool is_tritangent(const IncidenceGraph& g, int a, int b, int c) {
  require_cubic(g);
  const auto& v = g.vertices;
  const DegreeContext ctx(3);
  return v[a] + v[b] + v[c] == -ctx.canonical_class();
}

std::vector<Triangle> enumerate_tritangent_triangles(const IncidenceGraph& g) {
  require_cubic(g);
  std::vector<Triangle> out;
  for (int a = 0; a < 27; ++a) {
    for (int b = a + 1; b < 27; ++b) {
      for (int c = b + 1; c < 27; ++c) {
        if (is_tritangent(g, a, b, c)) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

bool is_double_six(const IncidenceGraph& g, const DoubleSix& s) {
  require_cubic(g);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j && (g.label(s.a[i], s.a[j]) != 0 || g.label(s.b[i], s.b[j]) != 0)) return false;
      if (g.label(s.a[i], s.b[j]) != (i == j ? 0 : 1)) return false;
    }
  }
  return true;
}

std::vector<DoubleSix> enumerate_double_sixes(const IncidenceGraph& g) {
  require_cubic(g);
  // Sixes of pairwise skew lines.
  std::vector<std::array<int, 6>> sixes;
  std::array<int, 6> cur{};
  auto rec = [&](auto&& self, int depth, int start) -> void {
    if (depth == 6) {
      sixes.push_back(cur);
      return;
    }
    for (int v = start; v < 27; ++v) {
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) ok = g.label(cur[k], v) == 0;
      if (!ok) continue;
      cur[depth] = v;
      self(self, depth + 1, v + 1);
    }
  };
  rec(rec, 0, 0);

  std::set<std::pair<LineMask, LineMask>> seen;
  std::vector<DoubleSix> out;
  for (const auto& a : sixes) {
    std::array<int, 6> b{};
    bool ok = true;
    for (int i = 0; i < 6 && ok; ++i) {
      int found = -1, count = 0;
      for (int v = 0; v < 27; ++v) {
        bool match = true;
        for (int j = 0; j < 6 && match; ++j) {
          if (v == a[j]) match = false;
          else match = g.label(v, a[j]) == (i == j ? 0 : 1);
        }
        if (match) {
          found = v;
          ++count;
        }
      }
      ok = count == 1;
      b[i] = found;
    }
    if (!ok) continue;
    auto s = normalize(a, b);
    if (!is_double_six(g, s)) continue;
    const LineMask ma = mask_of_range(s.a), mb = mask_of_range(s.b);
    if (seen.emplace(std::min(ma, mb), std::max(ma, mb)).second) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const DoubleSix& x, const DoubleSix& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

std::vector<LineMask> enumerate_trihedral_nines(const IncidenceGraph& g) {
  const auto tri = enumerate_tritangent_triangles(g);
  std::vector<LineMask> tmask;
  for (const auto& t : tri) tmask.push_back(mask_of_range(t));
  std::set<LineMask> nines;
  const std::size_t m = tri.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (tmask[i] & tmask[j]) continue;
      for (std::size_t k = j + 1; k < m; ++k) {
        if ((tmask[i] | tmask[j]) & tmask[k]) continue;
        const LineMask u = tmask[i] | tmask[j] | tmask[k];
        if (nines.count(u)) continue;
        // Columns: triangles inside u meeting each row in one line.
        std::vector<LineMask> cols;
        for (std::size_t c = 0; c < m; ++c) {
          if ((tmask[c] & u) != tmask[c] || c == i || c == j || c == k) continue;
          if (std::popcount(tmask[c] & tmask[i]) == 1 && std::popcount(tmask[c] & tmask[j]) == 1 &&
              std::popcount(tmask[c] & tmask[k]) == 1) {
            cols.push_back(tmask[c]);
          }
        }
        bool grid = false;
        for (std::size_t x = 0; x < cols.size() && !grid; ++x) {
          for (std::size_t y = x + 1; y < cols.size() && !grid; ++y) {
            for (std::size_t z = y + 1; z < cols.size() && !grid; ++z) {
              grid = (cols[x] | cols[y] | cols[z]) == u;
            }
          }
        }
        if (grid) nines.insert(u);
      }
    }
  }
  return {nines.begin(), nines.end()};
}

std::vector<TripleNine> enumerate_triple_nines(const IncidenceGraph& g) {
  const auto nines = enumerate_trihedral_nines(g);
  const std::set<LineMask> lookup(nines.begin(), nines.end());
  const LineMask all = (LineMask{1} << 27) - 1;
  std::vector<TripleNine> out;
  for (std::size_t i = 0; i < nines.size(); ++i) {
    for (std::size_t j = i + 1; j < nines.size(); ++j) {
      if (nines[i] & nines[j]) continue;
      const LineMask rest = all & ~(nines[i] | nines[j]);
      if (rest > nines[j] && lookup.count(rest)) out.push_back({{nines[i], nines[j], rest}});
    }
  }
  return out;
}

Triangle image_of(const Permutation& p, const Triangle& t) {
  Triangle r{p(t[0]), p(t[1]), p(t[2])};
  std::sort(r.begin(), r.end());
  return r;
}

DoubleSix image_of(const Permutation& p, const DoubleSix& s) {
  std::array<int, 6> a{}, b{};
  for (int i = 0; i < 6; ++i) {
    a[i] = p(s.a[i]);
    b[i] = p(s.b[i]);
  }
  return normalize(a, b);
}

TripleNine image_of(const Permutation& p, const TripleNine& t) {
  TripleNine r;
  for (int i = 0; i < 3; ++i) r.nines[i] = image_of(p, t.nines[i]);
  std::sort(r.nines.begin(), r.nines.end());
  return r;
}

}  // namespace delpezzo
