#pragma once

// Machine checks of the combinatorial claims about exceptional curves:
// class counts and group orders per degree, transitivity, the point
// stabilizer / blow-down chain, and the 27-line substructure statistics.
// Reports serialize as {"name", "pass", "claims": [{claim, expected, computed, pass}]}.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace delpezzo {

struct ClaimResult {
  std::string claim;
  nlohmann::json expected;
  nlohmann::json computed;
  bool pass = false;
};

struct Report {
  std::string name;
  std::vector<ClaimResult> claims;

  void add(std::string claim, nlohmann::json expected, nlohmann::json computed);
  bool all_pass() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  // Run the label-preserving automorphism search for d = 1 as well. When off,
  // d = 1 checks that every Weyl generator preserves labels and the Weyl order.
  bool full_aut_degree1 = false;
};

// Expected values per degree d = 1..7.
int expected_class_count(int d);
std::string expected_order_string(int d);  // decimal, e.g. "51840"
std::string expected_group_name(int d);

Report verify_degree_table(const VerifyOptions& opts = {}, std::optional<int> only_degree = std::nullopt);
Report stabilizer_chain_check(int d, const VerifyOptions& opts = {});
Report schlafli_report();

}  // namespace delpezzo
