#pragma once

// Conjugacy classes of the W(E6) image on the 27 lines, with the invariants
// used to recognise a Frobenius class from counts: cycle type, order, the
// characteristic polynomial on the rank-6 root lattice, fixed lines and Picard
// traces of all powers up to 12. Built once from the in-repo engine.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "delpezzo/incidence.hpp"
#include "json.hpp"

namespace delpezzo {

inline constexpr int kMaxPower = 12;

// Columns are images of H, E1, ..., E6 in that basis.
using LatticeMatrix = std::array<std::array<long long, 7>, 7>;

// The lattice automorphism induced by an incidence-preserving permutation of
// the degree-3 classes. Throws LatticeError if sigma does not preserve Gamma_3.
LatticeMatrix lattice_matrix(const IncidenceGraph& g3, const Permutation& sigma);
LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b);
long long trace(const LatticeMatrix& m);

struct ClassInfo {
  int id = 0;
  CycleType cycle_type;
  int order = 1;
  std::uint64_t size = 0;
  Permutation representative;
  // Monic, degree 6, constant term first.
  std::vector<long long> char_poly;
  // Index m = 0..12: lines fixed by sigma^m, trace of sigma^m on Pic (rank 7).
  std::array<int, kMaxPower + 1> fixed_lines{};
  std::array<int, kMaxPower + 1> pic_traces{};
};

class ClassTable {
 public:
  // Shared table, built on first use; thread-safe.
  static const ClassTable& get();

  const IncidenceGraph& graph() const { return graph_; }
  const PermutationGroup& group() const { return group_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const ClassInfo& info(int id) const { return classes_.at(id); }
  std::size_t size() const { return classes_.size(); }

  // Throws std::invalid_argument if sigma is not in the group.
  int class_of(const Permutation& sigma) const;
  const std::vector<Permutation>& elements() const { return elements_; }
  const std::vector<int>& element_classes() const { return element_class_; }

  std::set<int> element_orders() const;
  bool cycle_types_separate() const { return cycle_types_separate_; }
  bool char_polys_separate() const { return char_polys_separate_; }

  nlohmann::json to_json() const;
  // SHA-256 of to_json().dump(), lowercase hex.
  const std::string& hash() const { return hash_; }

 private:
  ClassTable();

  IncidenceGraph graph_;
  PermutationGroup group_;
  std::vector<Permutation> elements_;  // sorted
  std::vector<int> element_class_;
  std::vector<ClassInfo> classes_;
  bool cycle_types_separate_ = false;
  bool char_polys_separate_ = false;
  std::string hash_;
};

std::string sha256_hex(const std::string& data);

}  // namespace delpezzo
