#include "delpezzo/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace delpezzo {

int CycleType::degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int CycleType::fixed_points_of_power(int m) const {
  int fixed = 0;
  for (int c : parts) {
    if (m % c == 0) fixed += c;
  }
  return fixed;
}

int CycleType::order() const {
  int o = 1;
  for (int c : parts) o = std::lcm(o, c);
  return o;
}

std::string CycleType::to_string() const {
  std::map<int, int> counts;
  for (int c : parts) ++counts[c];
  std::ostringstream os;
  bool first = true;
  for (auto [len, mult] : counts) {
    if (!first) os << ' ';
    os << len;
    if (mult != 1) os << '^' << mult;
    first = false;
  }
  return os.str();
}

Permutation::Permutation(int n) {
  if (n < 0 || n > kMaxDegree) throw PermutationError("degree out of range");
  images_.resize(n);
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  if (n > kMaxDegree) throw PermutationError("degree out of range");
  std::vector<bool> seen(n, false);
  images_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int y = images[i];
    if (y < 0 || y >= n || seen[y]) {
      throw PermutationError("not a bijection at position " + std::to_string(i));
    }
    seen[y] = true;
    images_[i] = static_cast<std::uint8_t>(y);
  }
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw PermutationError("degree mismatch in product");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = images_[rhs.images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Permutation Permutation::pow(long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  if (e < 0) e = -e;
  Permutation r(degree());
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

int Permutation::fixed_points() const {
  int f = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) f += images_[i] == i;
  return f;
}

CycleType Permutation::cycle_type() const {
  CycleType t;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    t.parts.push_back(len);
  }
  std::sort(t.parts.begin(), t.parts.end(), std::greater<>());
  return t;
}

Permutation Permutation::conjugated_by(const Permutation& c) const {
  // (c p c^-1)(c(x)) = c(p(x))
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) r.images_[c.images_[x]] = c.images_[images_[x]];
  return r;
}

}  // namespace delpezzo
