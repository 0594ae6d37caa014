#include "delpezzo/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "delpezzo/rng.hpp"

namespace delpezzo {

namespace {

int first_moved_point(const Permutation& p) {
  for (int i = 0; i < p.degree(); ++i) {
    if (p(i) != i) return i;
  }
  return -1;
}

bool fixes_all(const Permutation& p, const std::vector<int>& pts, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    if (p(pts[i]) != pts[i]) return false;
  }
  return true;
}

}  // namespace

PermutationGroup PermutationGroup::from_generators(int n, std::vector<Permutation> gens,
                                                   std::vector<int> base_prefix) {
  if (n < 0 || n > Permutation::kMaxDegree) throw PermutationError("degree out of range");
  PermutationGroup g;
  g.n_ = n;
  for (auto& p : gens) {
    if (p.degree() != n) throw PermutationError("generator degree does not match group degree");
  }
  g.gens_ = std::move(gens);
  for (int b : base_prefix) g.check_point(b);

  std::vector<Permutation> nontrivial;
  for (const auto& p : g.gens_) {
    if (!p.is_identity()) nontrivial.push_back(p);
  }
  std::vector<int> base = base_prefix;
  for (const auto& p : nontrivial) {
    if (fixes_all(p, base, base.size())) base.push_back(first_moved_point(p));
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    Level lv;
    lv.base_point = base[i];
    for (const auto& p : nontrivial) {
      if (fixes_all(p, base, i)) lv.gens.push_back(p);
    }
    g.rebuild_level(lv);
    g.levels_.push_back(std::move(lv));
  }
  g.schreier_sims();
  return g;
}

void PermutationGroup::check_point(int point) const {
  if (point < 0 || point >= n_) {
    throw PermutationError("point " + std::to_string(point) + " out of range for degree " +
                           std::to_string(n_));
  }
}

void PermutationGroup::rebuild_level(Level& lv) const {
  lv.orbit.assign(1, lv.base_point);
  lv.orbit_index.assign(n_, -1);
  lv.orbit_index[lv.base_point] = 0;
  lv.transversal.assign(1, Permutation(n_));
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    const int beta = lv.orbit[k];
    for (const auto& s : lv.gens) {
      const int gamma = s(beta);
      if (lv.orbit_index[gamma] >= 0) continue;
      lv.orbit_index[gamma] = static_cast<int>(lv.orbit.size());
      lv.orbit.push_back(gamma);
      lv.transversal.push_back(s * lv.transversal[k]);
    }
  }
  lv.inv_transversal.clear();
  for (const auto& u : lv.transversal) lv.inv_transversal.push_back(u.inverse());
}

std::pair<Permutation, std::size_t> PermutationGroup::strip(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    const int idx = lv.orbit_index[g(lv.base_point)];
    if (idx < 0) return {std::move(g), l};
    g = lv.inv_transversal[idx] * g;
  }
  return {std::move(g), levels_.size()};
}

void PermutationGroup::schreier_sims() {
  // Levels are 0-based here: level i has gens fixing base points 0..i-1.
  std::size_t i = levels_.size();
  while (i > 0) {
    const std::size_t li = i - 1;
    bool restarted = false;
    for (std::size_t k = 0; k < levels_[li].orbit.size() && !restarted; ++k) {
      for (std::size_t si = 0; si < levels_[li].gens.size(); ++si) {
        const auto& lv = levels_[li];
        const int beta = lv.orbit[k];
        const Permutation& s = lv.gens[si];
        const int sb = s(beta);
        Permutation h = lv.inv_transversal[lv.orbit_index[sb]] * s * lv.transversal[k];
        auto [y, j] = strip(std::move(h), li + 1);
        if (j == levels_.size() && y.is_identity()) continue;
        if (j == levels_.size()) {
          Level nl;
          nl.base_point = first_moved_point(y);
          levels_.push_back(std::move(nl));
        }
        for (std::size_t l = li + 1; l <= j; ++l) {
          levels_[l].gens.push_back(y);
          rebuild_level(levels_[l]);
        }
        i = j + 1;
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

std::vector<int> PermutationGroup::base() const {
  std::vector<int> b;
  for (const auto& lv : levels_) b.push_back(lv.base_point);
  return b;
}

std::vector<Permutation> PermutationGroup::strong_generators() const {
  std::vector<Permutation> out;
  for (const auto& lv : levels_) {
    for (const auto& s : lv.gens) {
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  return out;
}

std::vector<int> PermutationGroup::basic_orbit_sizes() const {
  std::vector<int> out;
  for (const auto& lv : levels_) out.push_back(static_cast<int>(lv.orbit.size()));
  return out;
}

BigInt PermutationGroup::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

std::uint64_t PermutationGroup::order_u64() const {
  const BigInt o = order();
  if (o > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw CapacityError("group order exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(o);
}

bool PermutationGroup::contains(const Permutation& p) const {
  if (p.degree() != n_) return false;
  auto [y, j] = strip(p, 0);
  return j == levels_.size() && y.is_identity();
}

std::vector<int> PermutationGroup::orbit(int point) const {
  check_point(point);
  std::vector<bool> seen(n_, false);
  std::vector<int> orb{point};
  seen[point] = true;
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (const auto& s : gens_) {
      const int y = s(orb[k]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  }
  std::sort(orb.begin(), orb.end());
  return orb;
}

std::vector<std::vector<int>> PermutationGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(n_, false);
  for (int x = 0; x < n_; ++x) {
    if (seen[x]) continue;
    auto o = orbit(x);
    for (int y : o) seen[y] = true;
    out.push_back(std::move(o));
  }
  return out;
}

bool PermutationGroup::is_transitive() const {
  return n_ == 0 || static_cast<int>(orbit(0).size()) == n_;
}

PermutationGroup PermutationGroup::stabilizer(int point) const {
  check_point(point);
  auto rebased = from_generators(n_, gens_, {point});
  std::vector<Permutation> stab_gens;
  if (rebased.levels_.size() > 1) stab_gens = rebased.levels_[1].gens;
  return from_generators(n_, std::move(stab_gens));
}

void PermutationGroup::for_each_element(const std::function<void(const Permutation&)>& visit,
                                        std::uint64_t cap) const {
  if (order() > BigInt(cap)) {
    throw CapacityError("group order " + order().str() + " exceeds enumeration cap " +
                        std::to_string(cap));
  }
  const std::size_t k = levels_.size();
  if (k == 0) {
    visit(Permutation(n_));
    return;
  }
  // prefix[l] = u^(0) ... u^(l-1), odometer over transversal choices.
  std::vector<Permutation> prefix(k + 1, Permutation(n_));
  std::vector<std::size_t> choice(k, 0);
  std::size_t l = 0;
  for (;;) {
    for (; l < k; ++l) prefix[l + 1] = prefix[l] * levels_[l].transversal[choice[l]];
    visit(prefix[k]);
    std::size_t j = k;
    for (;;) {
      --j;
      if (++choice[j] < levels_[j].orbit.size()) break;
      choice[j] = 0;
      if (j == 0) return;
    }
    l = j;
  }
}

std::vector<Permutation> PermutationGroup::elements(std::uint64_t cap) const {
  std::vector<Permutation> out;
  for_each_element([&](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

std::set<CycleType> PermutationGroup::cycle_type_census(std::uint64_t cap) const {
  std::set<CycleType> out;
  for_each_element([&](const Permutation& p) { out.insert(p.cycle_type()); }, cap);
  return out;
}

Permutation PermutationGroup::random_element(std::uint64_t seed) const {
  SplitMix64 rng(seed);
  Permutation g(n_);
  for (const auto& lv : levels_) g = g * lv.transversal[rng.below(lv.orbit.size())];
  return g;
}

ConjugacyClasses conjugacy_classes(const PermutationGroup& g, std::uint64_t cap) {
  ConjugacyClasses cc;
  cc.elements = g.elements(cap);
  std::sort(cc.elements.begin(), cc.elements.end());
  std::unordered_map<Permutation, int, PermutationHash> index;
  index.reserve(cc.elements.size() * 2);
  for (std::size_t i = 0; i < cc.elements.size(); ++i) index.emplace(cc.elements[i], int(i));

  cc.class_of.assign(cc.elements.size(), -1);
  std::vector<std::vector<int>> raw;
  for (std::size_t i = 0; i < cc.elements.size(); ++i) {
    if (cc.class_of[i] >= 0) continue;
    const int c = static_cast<int>(raw.size());
    raw.emplace_back();
    std::deque<int> queue{int(i)};
    cc.class_of[i] = c;
    while (!queue.empty()) {
      const int e = queue.front();
      queue.pop_front();
      raw[c].push_back(e);
      for (const auto& s : g.generators()) {
        const int f = index.at(cc.elements[e].conjugated_by(s));
        if (cc.class_of[f] < 0) {
          cc.class_of[f] = c;
          queue.push_back(f);
        }
      }
    }
  }
  for (auto& m : raw) std::sort(m.begin(), m.end());
  // Elements are sorted, so members.front() is the least element of each class.
  auto key = [&](const std::vector<int>& m) {
    const auto& rep = cc.elements[m.front()];
    return std::make_tuple(rep.order(), rep.cycle_type(), m.size(), m.front());
  };
  std::sort(raw.begin(), raw.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  cc.members = std::move(raw);
  for (std::size_t c = 0; c < cc.members.size(); ++c) {
    for (int e : cc.members[c]) cc.class_of[e] = static_cast<int>(c);
  }
  return cc;
}

}  // namespace delpezzo
