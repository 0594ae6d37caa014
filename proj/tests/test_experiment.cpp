#include <algorithm>

#include "delpezzo/experiment.hpp"
#include "delpezzo/rng.hpp"
#include "doctest.h"

using namespace delpezzo;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.q = 2;
  c.degrees = {1, 2};
  c.samples = 4;
  c.max_place_degree = 2;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("configuration errors come before any work") {
  auto bad = [](auto edit) {
    ExperimentConfig c = small_config();
    edit(c);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(run_density(c), ConfigError);
  };
  bad([](ExperimentConfig& c) { c.q = 4; });
  bad([](ExperimentConfig& c) { c.q = 1; });
  bad([](ExperimentConfig& c) { c.samples = -1; });
  bad([](ExperimentConfig& c) { c.degrees = {}; });
  bad([](ExperimentConfig& c) { c.degrees = {-1}; });
  bad([](ExperimentConfig& c) { c.max_place_degree = 0; });
  bad([](ExperimentConfig& c) { c.max_place_degree = 21; });
  bad([](ExperimentConfig& c) { c.budget.points = 0; });
  bad([](ExperimentConfig& c) { c.budget.lines = 0; });
  bad([](ExperimentConfig& c) { c.budget.lines = 15; });
  bad([](ExperimentConfig& c) { c.threads = -2; });
  CHECK_NOTHROW(small_config().validate());
}

TEST_CASE("places are the monic irreducibles in order") {
  const auto places = finite_places(field(2, 1), 3);
  std::vector<std::string> ids;
  for (const auto& p : places) ids.push_back(place_id(p));
  CHECK(ids == std::vector<std::string>{"[0,1]", "[1,1]", "[1,1,1]", "[1,1,0,1]", "[1,0,1,1]"});
  CHECK(finite_places(field(3, 1), 2).size() == 3 + 3);
}

TEST_CASE("sampling is keyed and uniform in shape") {
  const Field& f = field(3, 1);
  const auto a = sample_form(f, 2, 99), b = sample_form(f, 2, 99), c = sample_form(f, 2, 100);
  CHECK(a.to_string() == b.to_string());
  CHECK(a.to_string() != c.to_string());
  CHECK(a.max_degree() <= 2);
  // The first coefficient is drawn constant term first from the keyed stream.
  SplitMix64 rng(99);
  std::vector<Elem> first(3);
  for (auto& x : first) x = static_cast<Elem>(rng.below(3));
  CHECK(a.coeffs()[0] == UniPoly(f, first));
}

TEST_CASE("an empty run is an empty report") {
  ExperimentConfig c = small_config();
  c.samples = 0;
  const auto rep = run_density(c);
  CHECK(rep.samples.empty());
  REQUIRE(rep.rows.size() == 2);
  for (const auto& r : rep.rows) {
    CHECK(r.samples == 0);
    CHECK(r.h1_density() == 0.0);
  }
  CHECK(rep.to_json()["schema"] == kDensitySchema);
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
  ExperimentConfig c = small_config();
  const auto one = run_density(c).to_json().dump();
  c.threads = 3;
  const auto three = run_density(c).to_json().dump();
  CHECK(one == three);
  CHECK(run_density(c).to_csv() == run_density(small_config()).to_csv());
  c.seed = 2;
  CHECK(run_density(c).to_json().dump() != one);
}

TEST_CASE("samples are independent of evaluation order") {
  const ExperimentConfig c = small_config();
  const auto rep = run_density(c);
  const Field& f = field(c.q, 1);
  const auto places = finite_places(f, c.max_place_degree);
  for (std::size_t t = rep.samples.size(); t-- > 0;) {
    const auto& s = rep.samples[t];
    const auto key = SplitMix64::derive(SplitMix64::derive(c.seed, s.degree), s.index);
    auto again = run_sample(sample_form(f, s.degree, key), places, c);
    again.index = s.index;
    again.degree = s.degree;
    CHECK(again.to_json() == s.to_json());
  }
  // Row counts add up and densities are proportions.
  for (const auto& r : rep.rows) {
    CHECK(r.counted() + r.skipped == r.samples);
    CHECK(r.h1_trivial <= r.counted());
    CHECK(r.not_in_listed <= r.counted());
    CHECK(r.h1_density() >= 0.0);
    CHECK(r.h1_density() <= 1.0);
  }
}

TEST_CASE("a sample with only bad places is skipped") {
  // Every coefficient is a multiple of u^2 + u, which vanishes at both degree-one places.
  std::string text = "2 1 : ";
  for (int m = 0; m < 20; ++m) text += std::string(m ? "," : "") + "[0,1,1]";
  const auto form = std::get<PolyCubicForm>(parse_surface(text));
  ExperimentConfig c = small_config();
  c.max_place_degree = 1;
  const auto r = run_sample(form, finite_places(field(2, 1), 1), c);
  CHECK(r.bad_places == 2);
  CHECK(r.skipped());
  CHECK(r.h1.kind == CertificateKind::Inconclusive);
  CHECK(r.exclusion.kind == CertificateKind::Inconclusive);
}

TEST_CASE("conjugate roots give the same Frobenius evidence") {
  const Field& f = field(2, 1);
  const Field& f4 = field(2, 2);
  const UniPoly place(f, {1, 1, 1});
  const auto rts = roots(place.mapped(embed(f, f4)));
  REQUIRE(rts.size() == 2);
  int compared = 0;
  for (std::uint64_t key = 1; key < 40 && compared < 5; ++key) {
    const auto form = sample_form(f, 2, key);
    const auto a = specialize_at(form, f4, rts[0]);
    const auto b = specialize_at(form, f4, rts[1]);
    if (!a || !b) continue;
    const auto x = analyze_surface(*a), y = analyze_surface(*b);
    CHECK(x.verdict == y.verdict);
    if (x.verdict != Smoothness::SmoothCertified) continue;
    CHECK(x.classes == y.classes);
    CHECK(x.line_counts == y.line_counts);
    ++compared;
  }
  CHECK(compared == 5);
}

TEST_CASE("surface reports carry table hashes and splitting data") {
  CubicForm::Coeffs c{};
  for (auto e : {Exponents{3, 0, 0, 0}, Exponents{0, 3, 0, 0}, Exponents{0, 0, 3, 0}, Exponents{0, 0, 0, 3}}) {
    c[monomial_index(e)] = 1;
  }
  const auto j = surface_report(CubicForm(field(2, 1), c), SurfaceBudget{});
  CHECK(j["verdict"] == "SmoothCertified");
  CHECK(j["rational_lines"] == 3);
  CHECK(j["splitting_degree"] == 2);
  CHECK(table_hashes()["class_table"].get<std::string>().size() == 64);
}
