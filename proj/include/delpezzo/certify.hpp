#pragma once

// Galois-theoretic conclusions from Frobenius evidence over W(E6): cycle-type
// sets of named subgroups, H^1-triviality and subgroup-exclusion certificates
// under conservative ambiguity semantics, and an independent H^1 computation
// for cyclic groups acting on the Picard lattice.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delpezzo/permutation.hpp"
#include "json.hpp"

namespace delpezzo {

struct SubgroupCycleSet {
  std::string name;
  std::uint64_t order = 0;
  std::set<CycleType> cycle_types;
  std::set<int> classes;  // conjugacy classes meeting the subgroup

  bool contains(const CycleType& t) const { return cycle_types.count(t) > 0; }
  nlohmann::json to_json() const;
};

// The subgroup {g in W(E6) : member(g)} of the 27-line image; member must
// define a subgroup (closure is checked).
SubgroupCycleSet make_subgroup_cycle_set(std::string name, const std::function<bool(const Permutation&)>& member);

// Named stabilizers of one representative of each structure; built once.
class SubgroupTables {
 public:
  static const SubgroupTables& get();

  const SubgroupCycleSet& line_stab() const { return sets_.at(0); }
  const SubgroupCycleSet& double_six_stab() const { return sets_.at(1); }
  const SubgroupCycleSet& tritangent_stab() const { return sets_.at(2); }
  const SubgroupCycleSet& triple_nine_set_stab() const { return sets_.at(3); }
  const SubgroupCycleSet& triple_nine_componentwise_stab() const { return sets_.at(4); }
  const SubgroupCycleSet& even_subgroup() const { return sets_.at(5); }
  const std::vector<SubgroupCycleSet>& all() const { return sets_; }
  // Throws std::out_of_range for an unknown name.
  const SubgroupCycleSet& by_name(const std::string& name) const;
  // LineStab, DoubleSixStab, TritangentStab, TripleNineComponentwiseStab,
  // TripleNineSetStab, EvenSubgroup.
  std::vector<SubgroupCycleSet> default_exclusion_list() const;
  // Cycle types of the whole group.
  const std::set<CycleType>& all_cycle_types() const { return all_types_; }

  nlohmann::json to_json() const;
  const std::string& hash() const { return hash_; }

 private:
  SubgroupTables();
  std::vector<SubgroupCycleSet> sets_;
  std::set<CycleType> all_types_;
  std::string hash_;
};

// Per-place ambiguity sets of Frobenius classes. Adding a place twice keeps
// the intersection, so merging is associative and order-independent.
class CycleTypeObservation {
 public:
  // Throws std::invalid_argument on an empty set, an unknown class id, or an
  // empty intersection with an earlier record of the same place.
  void add(const std::string& place, const std::set<int>& classes);
  void merge(const CycleTypeObservation& other);

  const std::map<std::string, std::set<int>>& places() const { return places_; }
  bool empty() const { return places_.empty(); }
  nlohmann::json to_json() const;

 private:
  std::map<std::string, std::set<int>> places_;
};

enum class CertificateKind { NoStableDoubleSix, NoStableTripleNine, H1Trivial, NotInListedSubgroups, Inconclusive };
const char* to_string(CertificateKind k);

struct Certificate {
  CertificateKind kind = CertificateKind::Inconclusive;
  std::map<std::string, std::string> witnesses;  // subgroup name -> place
  std::vector<std::string> not_excluded;         // subgroups without a witness
  std::string class_table_hash;
  std::string subgroup_table_hash;

  nlohmann::json to_json() const;
};

// First place (in id order) whose entire ambiguity set avoids cycletypes(h).
std::optional<std::string> excluding_place(const CycleTypeObservation& obs, const SubgroupCycleSet& h);

Certificate h1_certificate(const CycleTypeObservation& obs);
Certificate subgroup_exclusion_certificate(const CycleTypeObservation& obs, const std::vector<SubgroupCycleSet>& list);

// Diagonal of the Smith normal form (nonnegative, each dividing the next,
// zeros last). Throws std::overflow_error if an entry leaves int64.
std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> m);

struct H1Result {
  std::vector<std::int64_t> invariants;  // elementary divisors > 1
  std::uint64_t order() const;
  bool trivial() const { return invariants.empty(); }
  std::string to_string() const;  // e.g. "Z/2 x Z/2", "0"
};

// H^1(<sigma>, Pic) = ker(Norm) / im(sigma - 1) for sigma preserving Gamma_3.
// Throws LatticeError if sigma does not preserve incidences.
H1Result h1_cyclic_oracle(const Permutation& sigma);

// Whether sigma maps some double-six onto itself, or each nine of some
// triple-nine into itself.
bool stabilizes_some_double_six(const Permutation& sigma);
bool stabilizes_each_nine_of_some_triple_nine(const Permutation& sigma);

}  // namespace delpezzo
