#pragma once

// Density experiment over F_q(u): random cubic forms with coefficients in
// F_q[u] of degree <= D, reduced at finite places of small degree, with
// Frobenius evidence fed into the H^1 and subgroup-exclusion certificates.
//
// Sampling is keyed by SplitMix64 streams: sample i of degree D draws from
// SplitMix64(derive(derive(seed, D), i)), coefficient by coefficient in
// monomial order and, within a coefficient, constant term first. An all-zero
// draw is discarded and the stream continues.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "delpezzo/certify.hpp"
#include "delpezzo/surface.hpp"
#include "json.hpp"

namespace delpezzo {

inline constexpr const char* kDensitySchema = "delpezzo.density/1";
inline constexpr const char* kSurfaceSchema = "delpezzo.surface/1";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  int q = 2;                   // prime
  std::vector<int> degrees{1, 2, 3};
  int samples = 200;           // per degree
  int max_place_degree = 3;
  int max_places = 0;          // per sample; 0 = every place up to max_place_degree
  SurfaceBudget budget = default_budget();
  std::uint64_t seed = 1;
  bool early_stop = true;      // stop a sample once both certificates fire
  int threads = 0;             // 0 = hardware concurrency; never affects results

  static SurfaceBudget default_budget();
  // Throws ConfigError before any work is done.
  void validate() const;
  nlohmann::json to_json() const;
};

// The monic irreducibles of degree 1..max_degree over F_q, by degree then
// integer order of the lower coefficients.
std::vector<UniPoly> finite_places(const Field& f, int max_degree);
std::string place_id(const UniPoly& place);

PolyCubicForm sample_form(const Field& f, int degree, std::uint64_t key);

struct SampleResult {
  int index = 0;
  int degree = 0;
  std::string form;
  int places_tried = 0;
  int bad_places = 0;
  int not_smooth_places = 0;
  int undetermined_places = 0;     // neither certified nor proven smooth; no evidence
  int certified_places = 0;        // SmoothCertified
  int proven_smooth_places = 0;    // Undetermined, but with no singular point at all
  CycleTypeObservation observation;
  Certificate h1;
  Certificate exclusion;

  bool skipped() const { return certified_places + proven_smooth_places == 0; }
  nlohmann::json to_json() const;
};

SampleResult run_sample(const PolyCubicForm& form, const std::vector<UniPoly>& places, const ExperimentConfig& cfg);

struct DensityRow {
  int degree = 0;
  int samples = 0;
  int skipped = 0;
  int h1_trivial = 0;
  int not_in_listed = 0;
  int counted() const { return samples - skipped; }
  double h1_density() const { return counted() ? double(h1_trivial) / counted() : 0.0; }
  double exclusion_density() const { return counted() ? double(not_in_listed) / counted() : 0.0; }
};

struct DensityReport {
  ExperimentConfig config;
  std::vector<DensityRow> rows;
  std::vector<SampleResult> samples;

  nlohmann::json to_json() const;
  std::string to_csv() const;
};

DensityReport run_density(const ExperimentConfig& cfg);

// Content hashes of the derived tables, embedded in every report.
nlohmann::json table_hashes();

// Per-surface report for explicit forms.
nlohmann::json surface_report(const CubicForm& f, const SurfaceBudget& budget);

}  // namespace delpezzo
