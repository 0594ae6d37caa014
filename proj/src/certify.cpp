#include "delpezzo/certify.hpp"

#include <algorithm>
#include <stdexcept>

#include "delpezzo/class_table.hpp"
#include "delpezzo/schlafli.hpp"

namespace delpezzo {

nlohmann::json SubgroupCycleSet::to_json() const {
  std::vector<std::string> types;
  for (const auto& t : cycle_types) types.push_back(t.to_string());
  return {{"name", name}, {"order", order}, {"cycle_types", types}, {"classes", classes}};
}

SubgroupCycleSet make_subgroup_cycle_set(std::string name, const std::function<bool(const Permutation&)>& member) {
  const auto& table = ClassTable::get();
  const auto& el = table.elements();
  SubgroupCycleSet s;
  s.name = std::move(name);
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (!member(el[i])) continue;
    in.push_back(i);
    s.cycle_types.insert(el[i].cycle_type());
    s.classes.insert(table.element_classes()[i]);
  }
  s.order = in.size();
  if (in.empty() || !el[in.front()].is_identity()) throw std::logic_error(s.name + " does not contain the identity");
  // Grow generators from the members until they generate the whole set; every
  // product met on the way must stay inside, so the set is the generated group.
  std::vector<bool> mark(el.size(), false), reach(el.size(), false);
  for (auto i : in) mark[i] = true;
  std::vector<std::size_t> gens;
  for (auto cand : in) {
    if (reach[cand]) continue;
    gens.push_back(cand);
    std::fill(reach.begin(), reach.end(), false);
    reach[in.front()] = true;
    std::vector<std::size_t> frontier{in.front()};
    while (!frontier.empty()) {
      const auto cur = frontier.back();
      frontier.pop_back();
      for (auto g : gens) {
        const Permutation prod = el[cur] * el[g];
        const auto nxt = static_cast<std::size_t>(std::lower_bound(el.begin(), el.end(), prod) - el.begin());
        if (nxt == el.size() || el[nxt] != prod || !mark[nxt]) throw std::logic_error(s.name + " is not a subgroup");
        if (!reach[nxt]) {
          reach[nxt] = true;
          frontier.push_back(nxt);
        }
      }
    }
  }
  return s;
}

SubgroupTables::SubgroupTables() {
  const auto& table = ClassTable::get();
  const auto& g = table.graph();
  const DoubleSix ds = enumerate_double_sixes(g).front();
  const Triangle tri = enumerate_tritangent_triangles(g).front();
  const TripleNine tn = enumerate_triple_nines(g).front();
  const LineMask ds_mask = ds.mask();
  const LineMask tri_mask = mask_of_range(tri);

  sets_.push_back(make_subgroup_cycle_set("LineStab", [](const Permutation& p) { return p(0) == 0; }));
  sets_.push_back(make_subgroup_cycle_set("DoubleSixStab", [&](const Permutation& p) { return image_of(p, ds_mask) == ds_mask; }));
  sets_.push_back(make_subgroup_cycle_set("TritangentStab", [&](const Permutation& p) { return image_of(p, tri_mask) == tri_mask; }));
  sets_.push_back(make_subgroup_cycle_set("TripleNineSetStab", [&](const Permutation& p) { return image_of(p, tn) == tn; }));
  sets_.push_back(make_subgroup_cycle_set("TripleNineComponentwiseStab", [&](const Permutation& p) {
    for (LineMask m : tn.nines) {
      if (image_of(p, m) != m) return false;
    }
    return true;
  }));
  // Determinant +1 on the lattice: the constant term of the characteristic polynomial.
  sets_.push_back(make_subgroup_cycle_set("EvenSubgroup", [&](const Permutation& p) {
    return table.info(table.class_of(p)).char_poly.front() == 1;
  }));
  for (const auto& p : table.elements()) all_types_.insert(p.cycle_type());
  hash_ = sha256_hex(to_json().dump());
}

const SubgroupTables& SubgroupTables::get() {
  static const SubgroupTables tables;
  return tables;
}

const SubgroupCycleSet& SubgroupTables::by_name(const std::string& name) const {
  for (const auto& s : sets_) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("unknown subgroup: " + name);
}

std::vector<SubgroupCycleSet> SubgroupTables::default_exclusion_list() const {
  return {line_stab(), double_six_stab(), tritangent_stab(), triple_nine_componentwise_stab(), triple_nine_set_stab(),
          even_subgroup()};
}

nlohmann::json SubgroupTables::to_json() const {
  nlohmann::json j;
  j["subgroups"] = nlohmann::json::array();
  for (const auto& s : sets_) j["subgroups"].push_back(s.to_json());
  std::vector<std::string> types;
  for (const auto& t : all_types_) types.push_back(t.to_string());
  j["all_cycle_types"] = types;
  return j;
}

void CycleTypeObservation::add(const std::string& place, const std::set<int>& classes) {
  if (classes.empty()) throw std::invalid_argument("empty ambiguity set at place " + place);
  const auto n = static_cast<int>(ClassTable::get().size());
  for (int c : classes) {
    if (c < 0 || c >= n) throw std::invalid_argument("unknown class id " + std::to_string(c));
  }
  auto [it, fresh] = places_.emplace(place, classes);
  if (fresh) return;
  std::set<int> both;
  std::set_intersection(it->second.begin(), it->second.end(), classes.begin(), classes.end(),
                        std::inserter(both, both.begin()));
  if (both.empty()) throw std::invalid_argument("contradictory evidence at place " + place);
  it->second = std::move(both);
}

void CycleTypeObservation::merge(const CycleTypeObservation& other) {
  for (const auto& [place, classes] : other.places_) add(place, classes);
}

nlohmann::json CycleTypeObservation::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [place, classes] : places_) j[place] = classes;
  return j;
}

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::NoStableDoubleSix:
      return "NoStableDoubleSix";
    case CertificateKind::NoStableTripleNine:
      return "NoStableTripleNine";
    case CertificateKind::H1Trivial:
      return "H1Trivial";
    case CertificateKind::NotInListedSubgroups:
      return "NotInListedSubgroups";
    case CertificateKind::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

nlohmann::json Certificate::to_json() const {
  return {{"kind", delpezzo::to_string(kind)},
          {"witnesses", witnesses},
          {"not_excluded", not_excluded},
          {"class_table_hash", class_table_hash},
          {"subgroup_table_hash", subgroup_table_hash}};
}

std::optional<std::string> excluding_place(const CycleTypeObservation& obs, const SubgroupCycleSet& h) {
  const auto& table = ClassTable::get();
  for (const auto& [place, classes] : obs.places()) {
    const bool avoids = std::none_of(classes.begin(), classes.end(),
                                     [&](int c) { return h.contains(table.info(c).cycle_type); });
    if (avoids) return place;
  }
  return std::nullopt;
}

namespace {

Certificate stamped() {
  Certificate c;
  c.class_table_hash = ClassTable::get().hash();
  c.subgroup_table_hash = SubgroupTables::get().hash();
  return c;
}

}  // namespace

Certificate h1_certificate(const CycleTypeObservation& obs) {
  const auto& t = SubgroupTables::get();
  Certificate c = stamped();
  const auto ds = excluding_place(obs, t.double_six_stab());
  const auto tn = excluding_place(obs, t.triple_nine_componentwise_stab());
  if (ds) {
    c.witnesses[t.double_six_stab().name] = *ds;
  } else {
    c.not_excluded.push_back(t.double_six_stab().name);
  }
  if (tn) {
    c.witnesses[t.triple_nine_componentwise_stab().name] = *tn;
  } else {
    c.not_excluded.push_back(t.triple_nine_componentwise_stab().name);
  }
  if (ds && tn) {
    c.kind = CertificateKind::H1Trivial;
  } else if (ds) {
    c.kind = CertificateKind::NoStableDoubleSix;
  } else if (tn) {
    c.kind = CertificateKind::NoStableTripleNine;
  }
  return c;
}

Certificate subgroup_exclusion_certificate(const CycleTypeObservation& obs, const std::vector<SubgroupCycleSet>& list) {
  Certificate c = stamped();
  for (const auto& h : list) {
    if (auto w = excluding_place(obs, h)) {
      c.witnesses[h.name] = *w;
    } else {
      c.not_excluded.push_back(h.name);
    }
  }
  if (!list.empty() && c.not_excluded.empty()) c.kind = CertificateKind::NotInListedSubgroups;
  return c;
}

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Smith normal form");
  return r;
}

}  // namespace

std::vector<std::int64_t> smith_diagonal(Matrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  auto row_op = [&](std::size_t dst, std::size_t src, std::int64_t k) {  // row dst -= k row src
    for (std::size_t j = 0; j < cols; ++j) m[dst][j] = checked_sub(m[dst][j], checked_mul(k, m[src][j]));
  };
  auto col_op = [&](std::size_t dst, std::size_t src, std::int64_t k) {  // col dst -= k col src
    for (std::size_t i = 0; i < rows; ++i) m[i][dst] = checked_sub(m[i][dst], checked_mul(k, m[i][src]));
  };
  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m[i][j] && (pi == rows || std::llabs(m[i][j]) < std::llabs(m[pi][pj]))) pi = i, pj = j;
        }
      }
      if (pi == rows) break;
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t]) {
          row_op(i, t, m[i][t] / m[t][t]);
          clean = clean && m[i][t] == 0;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j]) {
          col_op(j, t, m[t][j] / m[t][t]);
          clean = clean && m[t][j] == 0;
        }
      }
      if (!clean) continue;
      // Divisibility: fold a row with a non-multiple into the pivot row.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m[i][j] % m[t][t]) {
            for (std::size_t c = 0; c < cols; ++c) m[t][c] = checked_add(m[t][c], m[i][c]);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }
  std::vector<std::int64_t> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = std::llabs(m[i][i]);
  std::stable_partition(d.begin(), d.end(), [](std::int64_t x) { return x != 0; });
  return d;
}

std::uint64_t H1Result::order() const {
  std::uint64_t o = 1;
  for (auto d : invariants) o *= static_cast<std::uint64_t>(d);
  return o;
}

std::string H1Result::to_string() const {
  if (invariants.empty()) return "0";
  std::string s;
  for (auto d : invariants) s += (s.empty() ? "" : " x ") + std::string("Z/") + std::to_string(d);
  return s;
}

H1Result h1_cyclic_oracle(const Permutation& sigma) {
  const auto& table = ClassTable::get();
  const LatticeMatrix m = lattice_matrix(table.graph(), sigma);
  const int order = sigma.order();
  constexpr int n = 7;
  // Norm = 1 + M + ... + M^(order-1).
  Matrix norm(n, std::vector<std::int64_t>(n, 0));
  LatticeMatrix power{};
  for (int i = 0; i < n; ++i) power[i][i] = 1;
  for (int k = 0; k < order; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) norm[i][j] = checked_add(norm[i][j], power[i][j]);
    }
    power = multiply(power, m);
  }
  // Column reduction norm * U = [H | 0] with V = U^-1; trailing columns of U span ker(norm).
  Matrix a = norm, v(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) v[i][i] = 1;
  auto col_sub = [&](int dst, int src, std::int64_t k) {  // col dst -= k col src; V row src += k row dst
    for (int i = 0; i < n; ++i) a[i][dst] = checked_sub(a[i][dst], checked_mul(k, a[i][src]));
    for (int j = 0; j < n; ++j) v[src][j] = checked_add(v[src][j], checked_mul(k, v[dst][j]));
  };
  auto col_swap = [&](int x, int y) {
    for (int i = 0; i < n; ++i) std::swap(a[i][x], a[i][y]);
    std::swap(v[x], v[y]);
  };
  int pos = 0;
  for (int r = 0; r < n && pos < n; ++r) {
    for (;;) {
      int best = -1;
      for (int c = pos; c < n; ++c) {
        if (a[r][c] && (best < 0 || std::llabs(a[r][c]) < std::llabs(a[r][best]))) best = c;
      }
      if (best < 0) break;
      col_swap(pos, best);
      bool done = true;
      for (int c = pos + 1; c < n; ++c) {
        if (a[r][c]) {
          col_sub(c, pos, a[r][c] / a[r][pos]);
          done = done && a[r][c] == 0;
        }
      }
      if (done) {
        ++pos;
        break;
      }
    }
  }
  // Coordinates of im(M - 1) in the kernel basis: rows pos..n-1 of V (M - 1).
  Matrix c;
  for (int i = pos; i < n; ++i) {
    std::vector<std::int64_t> row(n, 0);
    for (int j = 0; j < n; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < n; ++k) s = checked_add(s, checked_mul(v[i][k], m[k][j] - (k == j ? 1 : 0)));
      row[j] = s;
    }
    c.push_back(std::move(row));
  }
  H1Result res;
  if (c.empty()) return res;
  for (auto d : smith_diagonal(c)) {
    if (d == 0) throw std::logic_error("H^1 of a finite group has no free part");
    if (d > 1) res.invariants.push_back(d);
  }
  return res;
}

bool stabilizes_some_double_six(const Permutation& sigma) {
  static const auto sixes = enumerate_double_sixes(ClassTable::get().graph());
  return std::any_of(sixes.begin(), sixes.end(), [&](const DoubleSix& s) { return image_of(sigma, s.mask()) == s.mask(); });
}

bool stabilizes_each_nine_of_some_triple_nine(const Permutation& sigma) {
  static const auto triples = enumerate_triple_nines(ClassTable::get().graph());
  return std::any_of(triples.begin(), triples.end(), [&](const TripleNine& t) {
    return std::all_of(t.nines.begin(), t.nines.end(), [&](LineMask m) { return image_of(sigma, m) == m; });
  });
}

}  // namespace delpezzo
