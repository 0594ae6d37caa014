#pragma once

// Permutation groups via a base and strong generating set, built by the
// deterministic Schreier-Sims algorithm.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "delpezzo/permutation.hpp"

namespace delpezzo {

using BigInt = boost::multiprecision::cpp_int;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

class PermutationGroup {
 public:
  PermutationGroup() = default;

  // Base points are taken from `base_prefix` first, then extended as needed.
  static PermutationGroup from_generators(int n, std::vector<Permutation> gens,
                                          std::vector<int> base_prefix = {});
  static PermutationGroup trivial(int n) { return from_generators(n, {}); }

  int degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  std::vector<int> base() const;
  // Union of the level generating sets, without repeats.
  std::vector<Permutation> strong_generators() const;
  // Fundamental orbit sizes along the base.
  std::vector<int> basic_orbit_sizes() const;

  BigInt order() const;
  // Order as 64-bit integer; throws CapacityError if it does not fit.
  std::uint64_t order_u64() const;

  bool contains(const Permutation& p) const;
  // Sorted.
  std::vector<int> orbit(int point) const;
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;

  PermutationGroup stabilizer(int point) const;

  // Visits every element exactly once as a product of transversal elements.
  void for_each_element(const std::function<void(const Permutation&)>& visit,
                        std::uint64_t cap = kDefaultEnumerationCap) const;
  std::vector<Permutation> elements(std::uint64_t cap = kDefaultEnumerationCap) const;
  std::set<CycleType> cycle_type_census(std::uint64_t cap = kDefaultEnumerationCap) const;

  // Product of independent uniform transversal elements, keyed by `seed`.
  Permutation random_element(std::uint64_t seed) const;

 private:
  struct Level {
    int base_point = 0;
    std::vector<Permutation> gens;
    std::vector<int> orbit;
    std::vector<int> orbit_index;  // point -> position in orbit, or -1
    std::vector<Permutation> transversal;      // u_beta with u_beta(b) = beta
    std::vector<Permutation> inv_transversal;
  };

  void rebuild_level(Level& level) const;
  // Returns the residue and the level at which stripping stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;
  void schreier_sims();
  void check_point(int point) const;

  int n_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

// Conjugacy classes by orbit partition under conjugation, over full enumeration.
struct ConjugacyClasses {
  std::vector<Permutation> elements;
  std::vector<int> class_of;            // per element
  std::vector<std::vector<int>> members;  // per class, element indices sorted
  // Classes are ordered by (element order, cycle type, size, least element).
  Permutation representative(int c) const { return elements[members[c].front()]; }
};

ConjugacyClasses conjugacy_classes(const PermutationGroup& g,
                                   std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace delpezzo
