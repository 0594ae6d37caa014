#pragma once

// Blow-up model of the Picard lattice of a del Pezzo surface of degree d:
// Z^{1,9-d} with basis (H, E_1, ..., E_{9-d}), form diag(1, -1, ..., -1)
// and canonical class K = (-3, 1, ..., 1).

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace delpezzo {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<int> coords) : coords_(std::move(coords)) {}

  std::size_t size() const { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<int>& coords() const { return coords_; }

  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator-() const;
  LatticeVector operator*(int s) const;

  auto operator<=>(const LatticeVector&) const = default;
  bool operator==(const LatticeVector&) const = default;

  // e.g. "H-E1-E2", "2H-E1-E2-E3-E4-E5"
  std::string to_string() const;

 private:
  std::vector<int> coords_;
};

class DegreeContext {
 public:
  // Throws LatticeError for d outside 1..7 (d = 8, 9 are unsupported).
  explicit DegreeContext(int degree);

  int degree() const { return degree_; }
  int rank() const { return 10 - degree_; }
  int num_points() const { return 9 - degree_; }
  const LatticeVector& canonical_class() const { return canonical_; }

  LatticeVector zero() const;
  LatticeVector hyperplane() const;  // H
  LatticeVector exceptional(int i) const;  // E_i, 1-based

  int pairing(const LatticeVector& v, const LatticeVector& w) const;

  // Sorted lexicographically on coordinates.
  std::vector<LatticeVector> exceptional_classes() const;
  std::vector<LatticeVector> roots() const;

  // alpha_0 = H-E1-E2-E3 (only when 9-d >= 3), alpha_i = E_i - E_{i+1}.
  std::vector<LatticeVector> simple_roots() const;

  LatticeVector reflect(const LatticeVector& root, const LatticeVector& v) const;

  bool is_exceptional(const LatticeVector& v) const;

 private:
  void check_dim(const LatticeVector& v) const;

  int degree_;
  LatticeVector canonical_;
};

// Largest |a| for which a class aH - sum b_i E_i with the given self-intersection
// and degree against -K can exist, from Cauchy-Schwarz. self = -1, kdot = 1 for
// exceptional classes; self = -2, kdot = 0 for roots.
int coefficient_bound(int num_points, int self, int kdot);

// Index of every exceptional class of ctx orthogonal to e, mapped to the index
// of its image among the exceptional classes of the degree d+1 context.
struct BlowDown {
  LatticeVector contracted;                 // the class e
  std::vector<LatticeVector> weyl_word;     // reflections taking e to E_{9-d}
  std::map<std::size_t, std::size_t> index_map;
};

BlowDown blow_down_correspondence(const DegreeContext& ctx, const LatticeVector& e);

// Word in simple reflections (applied left to right) taking `from` to `to`,
// both in the same Weyl orbit. Throws LatticeError if none exists.
std::vector<LatticeVector> weyl_word_between(const DegreeContext& ctx,
                                             const LatticeVector& from,
                                             const LatticeVector& to);

LatticeVector apply_word(const DegreeContext& ctx, const std::vector<LatticeVector>& word,
                         LatticeVector v);

// Position of v in a sorted class list, or throws.
std::size_t index_of(const std::vector<LatticeVector>& sorted, const LatticeVector& v);

}  // namespace delpezzo
