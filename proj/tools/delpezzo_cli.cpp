#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delpezzo/certify.hpp"
#include "delpezzo/class_table.hpp"
#include "delpezzo/experiment.hpp"
#include "delpezzo/surface.hpp"
#include "delpezzo/verify.hpp"
#include "json.hpp"

namespace {

using namespace delpezzo;

constexpr const char* kVerifySchema = "delpezzo.verify/1";
constexpr const char* kTablesSchema = "delpezzo.tables/1";

// Exit codes: 0 success, 1 failed claims or unusable input, 2 usage errors.
constexpr int kFail = 1;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

// Human-readable summaries move to stderr when JSON goes to stdout.
std::ostream& summary(const std::string& json_path) { return json_path == "-" ? std::cerr : std::cout; }

int cmd_verify(bool all, int degree, bool full_aut, const std::string& json_path) {
  VerifyOptions opts;
  opts.full_aut_degree1 = full_aut;
  std::vector<Report> reports;
  if (all || degree == 0) {
    reports.push_back(verify_degree_table(opts));
    for (int d = 1; d <= 6; ++d) reports.push_back(stabilizer_chain_check(d, opts));
    reports.push_back(schlafli_report());
  } else {
    reports.push_back(verify_degree_table(opts, degree));
    if (degree <= 6) reports.push_back(stabilizer_chain_check(degree, opts));
    if (degree == 3) reports.push_back(schlafli_report());
  }
  bool pass = true;
  nlohmann::json j;
  j["schema"] = kVerifySchema;
  j["tables"] = table_hashes();
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) {
    pass = pass && r.all_pass();
    j["reports"].push_back(r.to_json());
    summary(json_path) << (r.all_pass() ? "PASS " : "FAIL ") << r.name << " (" << r.claims.size() << " claims)\n";
    for (const auto& f : r.failures()) summary(json_path) << "  failed: " << f << "\n";
  }
  j["pass"] = pass;
  if (!json_path.empty()) write_json(json_path, j);
  return pass ? 0 : kFail;
}

int cmd_surface(const std::string& path, const SurfaceBudget& budget, const std::string& json_path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  // Parse everything first so a malformed file does no work.
  std::vector<std::pair<int, CubicForm>> forms;
  std::vector<std::string> errors;
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      auto parsed = parse_surface(line);
      if (auto* c = std::get_if<CubicForm>(&parsed)) {
        forms.emplace_back(no, *c);
      } else {
        errors.push_back(path + ":" + std::to_string(no) + ": coefficients must be constants for this command");
      }
    } catch (const std::exception& e) {
      errors.push_back(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << e << "\n";
    return kFail;
  }
  nlohmann::json j;
  j["schema"] = kSurfaceSchema;
  j["tables"] = table_hashes();
  j["budget"] = {{"points", budget.points}, {"lines", budget.lines}, {"singular", budget.singular},
                 {"max_singular_degree", budget.max_singular_degree}};
  j["surfaces"] = nlohmann::json::array();
  for (const auto& [no, f] : forms) {
    auto r = surface_report(f, budget);
    r["line"] = no;
    summary(json_path) << path << ":" << no << ": " << r["verdict"].get<std::string>();
    if (!r["rational_lines"].is_null()) summary(json_path) << ", rational lines " << r["rational_lines"];
    if (!r["splitting_degree"].is_null()) summary(json_path) << ", splitting degree " << r["splitting_degree"].dump();
    summary(json_path) << "\n";
    j["surfaces"].push_back(std::move(r));
  }
  if (!json_path.empty()) write_json(json_path, j);
  return 0;
}

int cmd_density(const ExperimentConfig& cfg, const std::string& json_path, const std::string& csv_path) {
  const auto rep = run_density(cfg);
  const std::string csv = rep.to_csv();
  summary(json_path) << csv;
  if (!json_path.empty()) write_json(json_path, rep.to_json());
  if (!csv_path.empty() && csv_path != "-") write_text(csv_path, csv);
  return 0;
}

int cmd_tables(const std::string& json_path) {
  nlohmann::json j;
  j["schema"] = kTablesSchema;
  j["tables"] = table_hashes();
  j["class_table"] = ClassTable::get().to_json();
  j["subgroup_tables"] = SubgroupTables::get().to_json();
  summary(json_path) << "class_table " << ClassTable::get().hash() << "\n";
  summary(json_path) << "subgroup_tables " << SubgroupTables::get().hash() << "\n";
  if (!json_path.empty()) write_json(json_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional curves on del Pezzo surfaces and Frobenius certificates for cubic surfaces"};
  app.require_subcommand(1);

  std::string json_path, csv_path;

  auto* verify = app.add_subcommand("verify", "Check the combinatorial claims for degrees 1..7");
  bool all = false, full_aut = false;
  int degree = 0;
  verify->add_flag("--all", all, "Every degree, every stabilizer chain and the 27-line counts");
  verify->add_option("-d,--degree", degree, "A single degree")->check(CLI::Range(1, 7));
  verify->add_flag("--full-aut", full_aut, "Run the automorphism search for degree 1 as well (slow)");
  verify->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");

  auto* surface = app.add_subcommand("surface", "Analyze cubic surfaces, one per line of FILE");
  surface->footer(
      "Line format: 'p k : c1,...,c20' with coefficients of the 20 cubic monomials in graded\n"
      "lexicographic order x > y > z > w (x^3, x^2y, x^2z, x^2w, xy^2, ...). Over F_p a coefficient\n"
      "is an integer; over F_{p^k} it is an integer 0..p^k-1 whose base-p digits are the coordinates\n"
      "in the power basis, constant digit first. Blank lines and lines starting with '#' are ignored.");
  std::string surface_file;
  SurfaceBudget sbudget;
  surface->add_option("file", surface_file, "Input file")->required();
  surface->add_option("--budget-points", sbudget.points, "Largest q^{3m} for point counts over F_{q^m}");
  surface->add_option("--budget-lines", sbudget.lines, "Largest q^{2m} for line searches over F_{q^m}");
  surface->add_option("--budget-singular", sbudget.singular, "Largest q^{2m} for singular point searches");
  surface->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");

  auto* density = app.add_subcommand("density", "Density of certified surfaces over F_q(u)");
  density->footer(
      "Coefficients are UniPolys in F_q[u] of degree <= D. In surface files such a coefficient\n"
      "is written [a0,a1,...], constant term first.");
  ExperimentConfig cfg;
  bool no_early_stop = false;
  density->add_option("--q", cfg.q, "Prime field size");
  density->add_option("--degrees", cfg.degrees, "Coefficient degree bounds D")->delimiter(',');
  density->add_option("--samples", cfg.samples, "Samples per D");
  density->add_option("--max-place-degree", cfg.max_place_degree, "Largest place degree s");
  density->add_option("--max-places", cfg.max_places, "Places tried per sample (0 = all)");
  density->add_option("--seed", cfg.seed, "Sampling seed");
  density->add_option("--budget-points", cfg.budget.points, "Largest q^{3m} for point counts");
  density->add_option("--budget-lines", cfg.budget.lines, "Largest q^{2m} for line searches");
  density->add_option("--budget-singular", cfg.budget.singular, "Largest q^{2m} for singular point searches");
  density->add_option("--threads", cfg.threads, "Worker threads (0 = all cores); results do not depend on it");
  density->add_flag("--no-early-stop", no_early_stop, "Try every place even after both certificates hold");
  density->add_option("--json", json_path, "Write the JSON report here ('-' for stdout)");
  density->add_option("--csv", csv_path, "Write the per-D CSV table here");

  auto* tables = app.add_subcommand("tables", "Dump the derived class and subgroup tables with their hashes");
  tables->add_option("--json", json_path, "Write the tables here ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(all, degree, full_aut, json_path);
    if (*surface) return cmd_surface(surface_file, sbudget, json_path);
    if (*density) {
      cfg.early_stop = !no_early_stop;
      return cmd_density(cfg, json_path, csv_path);
    }
    if (*tables) return cmd_tables(json_path);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return 0;
}
