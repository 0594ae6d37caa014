#include "delpezzo/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

namespace delpezzo {

LatticeVector LatticeVector::operator+(const LatticeVector& o) const {
  LatticeVector r = *this;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o[i];
  return r;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const {
  LatticeVector r = *this;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o[i];
  return r;
}

LatticeVector LatticeVector::operator-() const { return *this * -1; }

LatticeVector LatticeVector::operator*(int s) const {
  LatticeVector r = *this;
  for (auto& c : r.coords_) c *= s;
  return r;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](int c, const std::string& name) {
    if (c == 0) return;
    if (c < 0) {
      os << "-";
    } else if (!first) {
      os << "+";
    }
    if (std::abs(c) != 1) os << std::abs(c);
    os << name;
    first = false;
  };
  term(coords_.empty() ? 0 : coords_[0], "H");
  for (std::size_t i = 1; i < coords_.size(); ++i) term(coords_[i], "E" + std::to_string(i));
  if (first) os << "0";
  return os.str();
}

DegreeContext::DegreeContext(int degree) : degree_(degree) {
  if (degree < 1 || degree > 7) {
    throw LatticeError("unsupported degree " + std::to_string(degree) +
                       " (only 1..7 are supported)");
  }
  std::vector<int> k(rank(), 1);
  k[0] = -3;
  canonical_ = LatticeVector(std::move(k));
}

LatticeVector DegreeContext::zero() const { return LatticeVector(std::vector<int>(rank(), 0)); }

LatticeVector DegreeContext::hyperplane() const {
  auto v = zero();
  v[0] = 1;
  return v;
}

LatticeVector DegreeContext::exceptional(int i) const {
  if (i < 1 || i > num_points()) throw LatticeError("E index out of range");
  auto v = zero();
  v[i] = 1;
  return v;
}

void DegreeContext::check_dim(const LatticeVector& v) const {
  if (static_cast<int>(v.size()) != rank()) {
    throw LatticeError("dimension mismatch: vector of length " + std::to_string(v.size()) +
                       " in rank " + std::to_string(rank()) + " lattice");
  }
}

int DegreeContext::pairing(const LatticeVector& v, const LatticeVector& w) const {
  check_dim(v);
  check_dim(w);
  int s = v[0] * w[0];
  for (int i = 1; i < rank(); ++i) s -= v[i] * w[i];
  return s;
}

bool DegreeContext::is_exceptional(const LatticeVector& v) const {
  return static_cast<int>(v.size()) == rank() && pairing(v, v) == -1 &&
         pairing(v, canonical_) == -1;
}

int coefficient_bound(int num_points, int self, int kdot) {
  // v = aH - sum b_i E_i: sum b_i = 3a + kdot, sum b_i^2 = a^2 - self.
  // Cauchy-Schwarz: (3a + kdot)^2 <= r (a^2 - self), a quadratic with
  // positive leading coefficient 9 - r.
  const double r = num_points;
  const double qa = 9.0 - r, qb = 6.0 * kdot, qc = double(kdot) * kdot + r * self;
  const double disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return 0;
  const double hi = (-qb + std::sqrt(disc)) / (2 * qa);
  const double lo = (-qb - std::sqrt(disc)) / (2 * qa);
  return static_cast<int>(std::ceil(std::max(std::abs(hi), std::abs(lo)))) + 1;
}

namespace {

// All v with pairing(v,v) = self and pairing(v,K) = kdot.
std::vector<LatticeVector> enumerate_classes(const DegreeContext& ctx, int self, int kdot) {
  const int r = ctx.num_points();
  const int bound = coefficient_bound(r, self, kdot);
  std::vector<LatticeVector> out;
  std::vector<int> b(r);
  for (int a = -bound; a <= bound; ++a) {
    const int want_sum = 3 * a + kdot;
    const int want_sq = a * a - self;
    if (want_sq < 0) continue;
    const int bmax = static_cast<int>(std::sqrt(double(want_sq))) + 1;
    std::function<void(int, int, int)> rec = [&](int i, int sum, int sq) {
      if (sq > want_sq) return;
      if (i == r) {
        if (sum == want_sum && sq == want_sq) {
          std::vector<int> c(r + 1);
          c[0] = a;
          for (int j = 0; j < r; ++j) c[j + 1] = -b[j];
          out.emplace_back(std::move(c));
        }
        return;
      }
      const int rem = want_sq - sq;
      const int left = r - i;
      const long gap = want_sum - sum;
      if (gap * gap > long(left) * rem) return;
      for (int x = -bmax; x <= bmax; ++x) {
        if (x * x > rem) continue;
        b[i] = x;
        rec(i + 1, sum + x, sq + x * x);
      }
    };
    rec(0, 0, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<LatticeVector> DegreeContext::exceptional_classes() const {
  return enumerate_classes(*this, -1, -1);
}

std::vector<LatticeVector> DegreeContext::roots() const { return enumerate_classes(*this, -2, 0); }

std::vector<LatticeVector> DegreeContext::simple_roots() const {
  std::vector<LatticeVector> out;
  if (num_points() >= 3) {
    auto a0 = hyperplane();
    for (int i = 1; i <= 3; ++i) a0[i] = -1;
    out.push_back(a0);
  }
  for (int i = 1; i < num_points(); ++i) out.push_back(exceptional(i) - exceptional(i + 1));
  return out;
}

LatticeVector DegreeContext::reflect(const LatticeVector& root, const LatticeVector& v) const {
  if (pairing(root, root) != -2) throw LatticeError("reflect: not a root " + root.to_string());
  return v + root * pairing(v, root);
}

std::size_t index_of(const std::vector<LatticeVector>& sorted, const LatticeVector& v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw LatticeError("class not found: " + v.to_string());
  return static_cast<std::size_t>(it - sorted.begin());
}

std::vector<LatticeVector> weyl_word_between(const DegreeContext& ctx, const LatticeVector& from,
                                             const LatticeVector& to) {
  const auto simple = ctx.simple_roots();
  std::map<LatticeVector, std::pair<LatticeVector, int>> parent;
  std::deque<LatticeVector> queue{from};
  parent.emplace(from, std::make_pair(from, -1));
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == to) {
      std::vector<LatticeVector> word;
      for (auto cur = v; cur != from;) {
        const auto& [prev, ri] = parent.at(cur);
        word.push_back(simple[ri]);
        cur = prev;
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (int i = 0; i < static_cast<int>(simple.size()); ++i) {
      auto w = ctx.reflect(simple[i], v);
      if (parent.emplace(w, std::make_pair(v, i)).second) queue.push_back(w);
    }
  }
  throw LatticeError("no Weyl word from " + from.to_string() + " to " + to.to_string());
}

LatticeVector apply_word(const DegreeContext& ctx, const std::vector<LatticeVector>& word,
                         LatticeVector v) {
  for (const auto& r : word) v = ctx.reflect(r, v);
  return v;
}

BlowDown blow_down_correspondence(const DegreeContext& ctx, const LatticeVector& e) {
  if (ctx.degree() > 6) throw LatticeError("blow-down needs d <= 6");
  if (!ctx.is_exceptional(e)) throw LatticeError("not an exceptional class: " + e.to_string());
  const DegreeContext up(ctx.degree() + 1);
  const auto classes = ctx.exceptional_classes();
  const auto target_classes = up.exceptional_classes();
  BlowDown bd;
  bd.contracted = e;
  bd.weyl_word = weyl_word_between(ctx, e, ctx.exceptional(ctx.num_points()));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (ctx.pairing(classes[i], e) != 0) continue;
    auto w = apply_word(ctx, bd.weyl_word, classes[i]);
    if (w[ctx.rank() - 1] != 0) throw LatticeError("blow-down: last coordinate not cleared");
    std::vector<int> c(w.coords().begin(), w.coords().end() - 1);
    bd.index_map.emplace(i, index_of(target_classes, LatticeVector(std::move(c))));
  }
  return bd;
}

}  // namespace delpezzo
