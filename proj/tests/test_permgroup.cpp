#include "doctest.h"

#include <map>
#include <set>

#include "delpezzo/lattice.hpp"
#include "delpezzo/perm_group.hpp"

using namespace delpezzo;

namespace {

std::vector<Permutation> reflection_generators(int d) {
  DegreeContext ctx(d);
  auto cls = ctx.exceptional_classes();
  std::vector<Permutation> gens;
  for (const auto& a : ctx.simple_roots()) {
    std::vector<int> img;
    for (const auto& v : cls) img.push_back(static_cast<int>(index_of(cls, ctx.reflect(a, v))));
    gens.push_back(Permutation::from_images(img));
  }
  return gens;
}

PermutationGroup weyl(int d) {
  auto g = reflection_generators(d);
  const int n = g.front().degree();
  return PermutationGroup::from_generators(n, std::move(g));
}

Permutation cyc(int n, std::vector<int> cycle) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  for (std::size_t i = 0; i < cycle.size(); ++i) img[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Permutation::from_images(img);
}

}  // namespace

TEST_CASE("permutation validation and algebra") {
  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), PermutationError);
  CHECK_THROWS_AS(Permutation::from_images({0, 3, 1}), PermutationError);
  auto p = cyc(5, {0, 1, 2});
  auto q = cyc(5, {2, 3});
  CHECK((p * q)(2) == p(q(2)));
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.pow(3).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK(p.cycle_type().parts == std::vector<int>{3, 1, 1});
  CHECK(p.cycle_type().to_string() == "1^2 3");
  CHECK(Permutation(27).cycle_type().to_string() == "1^27");
  CHECK(Permutation(27).cycle_type().parts.size() == 27);
  auto c = cyc(5, {1, 4});
  auto conj = p.conjugated_by(c);
  CHECK(conj == c * p * c.inverse());
}

TEST_CASE("cycle type helpers") {
  CycleType t{{12, 6, 4, 3, 2}};
  CHECK(t.order() == 12);
  CHECK(t.fixed_points_of_power(2) == 2);
  CHECK(t.fixed_points_of_power(12) == 27);
  CHECK(t.fixed_points_of_power(6) == 6 + 3 + 2);
}

TEST_CASE("trivial groups") {
  auto g = PermutationGroup::trivial(27);
  CHECK(g.order() == 1);
  CHECK(g.orbit(5) == std::vector<int>{5});
  CHECK(g.stabilizer(3).order() == 1);
  auto census = g.cycle_type_census();
  REQUIRE(census.size() == 1);
  CHECK(census.begin()->to_string() == "1^27");
  CHECK_THROWS_AS(g.orbit(27), PermutationError);
  CHECK_THROWS_AS(PermutationGroup::from_generators(4, {Permutation(5)}), PermutationError);
}

TEST_CASE("symmetric groups") {
  for (int n = 2; n <= 9; ++n) {
    auto g = PermutationGroup::from_generators(n, {cyc(n, {0, 1}), [&] {
                                                  std::vector<int> c(n);
                                                  for (int i = 0; i < n; ++i) c[i] = i;
                                                  return cyc(n, c);
                                                }()});
    BigInt fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    CHECK(g.order() == fact);
    CHECK(g.is_transitive());
  }
}

TEST_CASE("Weyl group images") {
  CHECK(weyl(3).order() == 51840);
  CHECK(BigInt(51840) == BigInt(128 * 81 * 5));
  CHECK(weyl(5).order() == 120);
  CHECK(weyl(4).order() == 1920);
  CHECK(weyl(6).order() == 12);
  CHECK(weyl(7).order() == 2);
  CHECK(weyl(2).order() == 2903040);
  CHECK(weyl(1).order() == 696729600);
  auto w3 = weyl(3);
  CHECK(w3.is_transitive());
  for (const auto& s : w3.generators()) CHECK(w3.contains(s));
  CHECK_FALSE(w3.contains(cyc(27, {0, 1})));
}

TEST_CASE("orbit-stabilizer") {
  for (int d : {3, 4, 5, 6, 7}) {
    auto g = weyl(d);
    for (int p = 0; p < g.degree(); p += 2) {
      auto st = g.stabilizer(p);
      CHECK(g.order() == st.order() * g.orbit(p).size());
      for (const auto& s : st.generators()) CHECK(s(p) == p);
    }
  }
  CHECK(weyl(3).stabilizer(0).order() == 1920);
  CHECK(weyl(1).stabilizer(0).order() == 2903040);
}

TEST_CASE("enumeration") {
  auto g = weyl(3);
  auto els = g.elements();
  CHECK(els.size() == 51840);
  std::set<Permutation> uniq(els.begin(), els.end());
  CHECK(uniq.size() == 51840);
  // closure spot-check
  for (std::size_t i = 0; i < els.size(); i += 997) {
    CHECK(g.contains(els[i] * els[(i * 31 + 7) % els.size()]));
  }
  std::uint64_t count = 0;
  weyl(2).for_each_element([&](const Permutation&) { ++count; });
  CHECK(count == 2903040);
  CHECK_THROWS_AS(weyl(1).for_each_element([](const Permutation&) {}), CapacityError);
  CHECK_THROWS_AS(weyl(3).elements(1000), CapacityError);
}

TEST_CASE("conjugacy classes of the degree-3 Weyl image") {
  auto cc = conjugacy_classes(weyl(3));
  CHECK(cc.members.size() == 25);
  std::size_t total = 0;
  for (const auto& m : cc.members) total += m.size();
  CHECK(total == 51840);
  CHECK(cc.representative(0).is_identity());
  std::set<int> orders;
  for (std::size_t c = 0; c < cc.members.size(); ++c) orders.insert(cc.representative(int(c)).order());
  CHECK(orders == std::set<int>{1, 2, 3, 4, 5, 6, 8, 9, 10, 12});
}

TEST_CASE("uniform random elements of S3") {
  auto g = PermutationGroup::from_generators(3, {cyc(3, {0, 1}), cyc(3, {0, 1, 2})});
  std::map<Permutation, int> hist;
  const int draws = 120000;
  for (int i = 0; i < draws; ++i) ++hist[g.random_element(0xabcdef00ULL + i)];
  REQUIRE(hist.size() == 6);
  const double mean = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (auto& [p, c] : hist) CHECK(std::abs(c - mean) < 3 * sigma);
}

TEST_CASE("random elements are members") {
  auto g = weyl(2);
  for (int i = 0; i < 50; ++i) CHECK(g.contains(g.random_element(i)));
}

TEST_CASE("base prefix is honoured") {
  auto g = PermutationGroup::from_generators(27, reflection_generators(3), {5, 9});
  auto b = g.base();
  REQUIRE(b.size() >= 2);
  CHECK(b[0] == 5);
  CHECK(b[1] == 9);
  CHECK(g.order() == 51840);
}
