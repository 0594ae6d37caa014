#include "delpezzo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "delpezzo/class_table.hpp"
#include "delpezzo/rng.hpp"

namespace delpezzo {

SurfaceBudget ExperimentConfig::default_budget() {
  SurfaceBudget b;
  b.traces_when_certified = false;
  return b;
}

void ExperimentConfig::validate() const {
  if (q < 2 || !is_prime(static_cast<std::uint64_t>(q))) throw ConfigError("q must be prime");
  if (degrees.empty()) throw ConfigError("at least one coefficient degree is required");
  for (int d : degrees) {
    if (d < 0 || d > 64) throw ConfigError("coefficient degree out of range: " + std::to_string(d));
  }
  if (samples < 0) throw ConfigError("sample count must be nonnegative");
  if (max_place_degree < 1) throw ConfigError("max place degree must be positive");
  if (max_places < 0) throw ConfigError("max places must be nonnegative");
  if (budget.points == 0 || budget.lines == 0 || budget.singular == 0) throw ConfigError("budgets must be positive");
  if (budget.max_singular_degree < 1) throw ConfigError("singular search degree must be positive");
  if (threads < 0) throw ConfigError("thread count must be nonnegative");
  // Residue fields of every place must fit the field size cap.
  std::uint64_t size = 1;
  for (int i = 0; i < max_place_degree; ++i) {
    size *= static_cast<std::uint64_t>(q);
    if (size > kMaxFieldSize) throw ConfigError("residue fields of degree " + std::to_string(max_place_degree) +
                                                " exceed the field size cap");
  }
  // A line search over the residue field itself must fit the line budget.
  if (size * size > budget.lines) throw ConfigError("line budget too small for the largest residue field");
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"q", q},
          {"degrees", degrees},
          {"samples", samples},
          {"max_place_degree", max_place_degree},
          {"max_places", max_places},
          {"budget_points", budget.points},
          {"budget_lines", budget.lines},
          {"budget_singular", budget.singular},
          {"max_singular_degree", budget.max_singular_degree},
          {"seed", seed},
          {"early_stop", early_stop}};
}

std::vector<UniPoly> finite_places(const Field& f, int max_degree) {
  std::vector<UniPoly> out;
  for (int s = 1; s <= max_degree; ++s) {
    for (auto& p : monic_irreducibles(f, s)) out.push_back(std::move(p));
  }
  return out;
}

std::string place_id(const UniPoly& place) { return place.to_string(); }

PolyCubicForm sample_form(const Field& f, int degree, std::uint64_t key) {
  SplitMix64 rng(key);
  for (;;) {
    std::vector<std::vector<Elem>> raw(20, std::vector<Elem>(degree + 1));
    bool any = false;
    for (auto& c : raw) {
      for (auto& x : c) {
        x = static_cast<Elem>(rng.below(f.size()));
        any = any || x;
      }
    }
    if (!any) continue;
    std::array<UniPoly, 20> cs{UniPoly(f, raw[0]),  UniPoly(f, raw[1]),  UniPoly(f, raw[2]),  UniPoly(f, raw[3]),
                               UniPoly(f, raw[4]),  UniPoly(f, raw[5]),  UniPoly(f, raw[6]),  UniPoly(f, raw[7]),
                               UniPoly(f, raw[8]),  UniPoly(f, raw[9]),  UniPoly(f, raw[10]), UniPoly(f, raw[11]),
                               UniPoly(f, raw[12]), UniPoly(f, raw[13]), UniPoly(f, raw[14]), UniPoly(f, raw[15]),
                               UniPoly(f, raw[16]), UniPoly(f, raw[17]), UniPoly(f, raw[18]), UniPoly(f, raw[19])};
    return PolyCubicForm(f, std::move(cs));
  }
}

nlohmann::json SampleResult::to_json() const {
  return {{"index", index},
          {"degree", degree},
          {"form", form},
          {"places_tried", places_tried},
          {"bad_places", bad_places},
          {"not_smooth_places", not_smooth_places},
          {"undetermined_places", undetermined_places},
          {"certified_places", certified_places},
          {"proven_smooth_places", proven_smooth_places},
          {"skipped", skipped()},
          {"observation", observation.to_json()},
          {"h1", delpezzo::to_string(h1.kind)},
          {"h1_witnesses", h1.witnesses},
          {"exclusion", delpezzo::to_string(exclusion.kind)},
          {"exclusion_witnesses", exclusion.witnesses}};
}

SampleResult run_sample(const PolyCubicForm& form, const std::vector<UniPoly>& places, const ExperimentConfig& cfg) {
  const auto list = SubgroupTables::get().default_exclusion_list();
  SampleResult r;
  r.form = form.to_string();
  const std::size_t limit = cfg.max_places > 0 ? std::min<std::size_t>(places.size(), cfg.max_places) : places.size();
  auto evaluate = [&]() {
    r.h1 = h1_certificate(r.observation);
    r.exclusion = subgroup_exclusion_certificate(r.observation, list);
  };
  evaluate();
  for (std::size_t i = 0; i < limit; ++i) {
    ++r.places_tried;
    const auto reduced = specialize(form, places[i]);
    if (!reduced) {
      ++r.bad_places;
      continue;
    }
    const auto a = analyze_surface(*reduced, cfg.budget);
    if (a.verdict == Smoothness::NotSmooth) {
      ++r.not_smooth_places;
      continue;
    }
    // A reduction that may be singular is no evidence.
    if (a.verdict == Smoothness::Undetermined && !a.smooth_proven) {
      ++r.undetermined_places;
      continue;
    }
    ++(a.verdict == Smoothness::SmoothCertified ? r.certified_places : r.proven_smooth_places);
    r.observation.add(place_id(places[i]), a.classes);
    evaluate();
    if (cfg.early_stop && r.h1.kind == CertificateKind::H1Trivial &&
        r.exclusion.kind == CertificateKind::NotInListedSubgroups) {
      break;
    }
  }
  if (r.skipped()) {
    // A sample without evidence never counts as a success.
    r.h1 = Certificate{CertificateKind::Inconclusive, {}, {}, ClassTable::get().hash(), SubgroupTables::get().hash()};
    r.exclusion = r.h1;
  }
  return r;
}

nlohmann::json table_hashes() {
  return {{"class_table", ClassTable::get().hash()}, {"subgroup_tables", SubgroupTables::get().hash()}};
}

DensityReport run_density(const ExperimentConfig& cfg) {
  cfg.validate();
  const Field& f = field(cfg.q, 1);
  const auto places = finite_places(f, cfg.max_place_degree);
  // Build shared tables before spawning workers.
  (void)table_hashes();

  DensityReport rep;
  rep.config = cfg;
  const std::size_t per = static_cast<std::size_t>(cfg.samples);
  rep.samples.resize(per * cfg.degrees.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= rep.samples.size()) return;
      const int d = cfg.degrees[t / per];
      const int i = static_cast<int>(t % per);
      try {
        const std::uint64_t key = SplitMix64::derive(SplitMix64::derive(cfg.seed, static_cast<std::uint64_t>(d)), i);
        SampleResult r = run_sample(sample_form(f, d, key), places, cfg);
        r.index = i;
        r.degree = d;
        rep.samples[t] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = rep.samples.size();
      }
    }
  };
  unsigned n = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, rep.samples.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t di = 0; di < cfg.degrees.size(); ++di) {
    DensityRow row;
    row.degree = cfg.degrees[di];
    for (std::size_t i = 0; i < per; ++i) {
      const auto& s = rep.samples[di * per + i];
      ++row.samples;
      if (s.skipped()) {
        ++row.skipped;
        continue;
      }
      row.h1_trivial += s.h1.kind == CertificateKind::H1Trivial;
      row.not_in_listed += s.exclusion.kind == CertificateKind::NotInListedSubgroups;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

nlohmann::json DensityReport::to_json() const {
  nlohmann::json j;
  j["schema"] = kDensitySchema;
  j["config"] = config.to_json();
  j["tables"] = table_hashes();
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"degree", r.degree},
                         {"samples", r.samples},
                         {"skipped", r.skipped},
                         {"counted", r.counted()},
                         {"h1_trivial", r.h1_trivial},
                         {"not_in_listed_subgroups", r.not_in_listed},
                         {"h1_density", r.h1_density()},
                         {"exclusion_density", r.exclusion_density()}});
  }
  j["samples"] = nlohmann::json::array();
  for (const auto& s : samples) j["samples"].push_back(s.to_json());
  return j;
}

std::string DensityReport::to_csv() const {
  std::ostringstream os;
  os << "degree,samples,skipped,counted,h1_trivial,not_in_listed_subgroups,h1_density,exclusion_density\n";
  for (const auto& r : rows) {
    os << r.degree << ',' << r.samples << ',' << r.skipped << ',' << r.counted() << ',' << r.h1_trivial << ','
       << r.not_in_listed << ',' << nlohmann::json(r.h1_density()).dump() << ','
       << nlohmann::json(r.exclusion_density()).dump() << '\n';
  }
  return os.str();
}

nlohmann::json surface_report(const CubicForm& f, const SurfaceBudget& budget) {
  const auto& table = ClassTable::get();
  const auto a = analyze_surface(f, budget);
  nlohmann::json j = a.to_json();
  j["form"] = f.to_string();
  j["rational_lines"] = a.line_counts.count(1) ? nlohmann::json(a.line_counts.at(1)) : nlohmann::json(nullptr);
  const auto degrees = a.splitting_degrees();
  if (a.verdict == Smoothness::NotSmooth) {
    j["splitting_degree"] = nullptr;
  } else if (degrees.size() == 1) {
    j["splitting_degree"] = *degrees.begin();
  } else {
    j["splitting_degree"] = degrees;
  }
  j["class_details"] = nlohmann::json::array();
  for (int c : a.classes) {
    const auto& info = table.info(c);
    j["class_details"].push_back({{"id", c}, {"cycle_type", info.cycle_type.to_string()}, {"order", info.order}});
  }
  return j;
}

}  // namespace delpezzo
