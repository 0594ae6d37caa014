#include "delpezzo/class_table.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <map>

namespace delpezzo {

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b) {
  LatticeMatrix r{};
  for (int i = 0; i < 7; ++i) {
    for (int k = 0; k < 7; ++k) {
      if (!a[i][k]) continue;
      for (int j = 0; j < 7; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

long long trace(const LatticeMatrix& m) {
  long long t = 0;
  for (int i = 0; i < 7; ++i) t += m[i][i];
  return t;
}

LatticeMatrix lattice_matrix(const IncidenceGraph& g3, const Permutation& sigma) {
  if (g3.degree != 3 || sigma.degree() != 27) throw LatticeError("lattice_matrix needs the degree-3 graph");
  if (!g3.graph.is_automorphism(sigma)) throw LatticeError("permutation does not preserve incidences");
  const DegreeContext ctx(3);
  const auto& v = g3.vertices;
  auto image = [&](const LatticeVector& c) { return v[sigma(static_cast<int>(index_of(v, c)))]; };
  std::vector<LatticeVector> cols(7);
  for (int i = 1; i <= 6; ++i) cols[i] = image(ctx.exceptional(i));
  // H = E1 + E2 + (H - E1 - E2).
  cols[0] = cols[1] + cols[2] + image(ctx.hyperplane() - ctx.exceptional(1) - ctx.exceptional(2));
  LatticeMatrix m{};
  for (int j = 0; j < 7; ++j) {
    for (int i = 0; i < 7; ++i) m[i][j] = cols[j][i];
  }
  // The linear extension must reproduce sigma on every class.
  for (std::size_t c = 0; c < v.size(); ++c) {
    std::vector<int> w(7, 0);
    for (int i = 0; i < 7; ++i) {
      long long s = 0;
      for (int j = 0; j < 7; ++j) s += m[i][j] * v[c][j];
      w[i] = static_cast<int>(s);
    }
    if (LatticeVector(w) != v[sigma(static_cast<int>(c))]) throw LatticeError("permutation is not induced by a lattice map");
  }
  return m;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

namespace {

// Characteristic polynomial from power sums p_1..p_6 (Newton's identities).
std::vector<long long> char_poly_from_power_sums(const std::array<long long, 7>& p) {
  std::array<long long, 7> e{};
  e[0] = 1;
  for (int k = 1; k <= 6; ++k) {
    long long s = 0;
    for (int i = 1; i <= k; ++i) s += ((i % 2) ? 1 : -1) * e[k - i] * p[i];
    if (s % k) throw LatticeError("non-integral elementary symmetric function");
    e[k] = s / k;
  }
  std::vector<long long> c(7);
  for (int k = 0; k <= 6; ++k) c[6 - k] = ((k % 2) ? -1 : 1) * e[k];
  return c;
}

}  // namespace

ClassTable::ClassTable() : graph_(build_incidence_graph(DegreeContext(3))), group_(weyl_image(DegreeContext(3))) {
  auto cc = conjugacy_classes(group_);
  elements_ = std::move(cc.elements);
  element_class_ = std::move(cc.class_of);
  for (std::size_t c = 0; c < cc.members.size(); ++c) {
    ClassInfo info;
    info.id = static_cast<int>(c);
    info.representative = elements_[cc.members[c].front()];
    info.cycle_type = info.representative.cycle_type();
    info.order = info.cycle_type.order();
    info.size = cc.members[c].size();
    const LatticeMatrix m = lattice_matrix(graph_, info.representative);
    LatticeMatrix power{};
    for (int i = 0; i < 7; ++i) power[i][i] = 1;
    std::array<long long, 7> root_sums{};
    for (int k = 0; k <= kMaxPower; ++k) {
      info.fixed_lines[k] = info.cycle_type.fixed_points_of_power(k == 0 ? info.order : k);
      info.pic_traces[k] = static_cast<int>(trace(power));
      if (k >= 1 && k <= 6) root_sums[k] = trace(power) - 1;  // K spans the fixed complement
      power = multiply(power, m);
    }
    info.char_poly = char_poly_from_power_sums(root_sums);
    classes_.push_back(std::move(info));
  }
  std::set<CycleType> types;
  std::set<std::vector<long long>> polys;
  for (const auto& c : classes_) {
    types.insert(c.cycle_type);
    polys.insert(c.char_poly);
  }
  cycle_types_separate_ = types.size() == classes_.size();
  char_polys_separate_ = polys.size() == classes_.size();
  hash_ = sha256_hex(to_json().dump());
}

const ClassTable& ClassTable::get() {
  static const ClassTable table;
  return table;
}

int ClassTable::class_of(const Permutation& sigma) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), sigma);
  if (it == elements_.end() || *it != sigma) throw std::invalid_argument("permutation is not in W(E6)");
  return element_class_[it - elements_.begin()];
}

std::set<int> ClassTable::element_orders() const {
  std::set<int> out;
  for (const auto& c : classes_) out.insert(c.order);
  return out;
}

nlohmann::json ClassTable::to_json() const {
  nlohmann::json j;
  j["group_order"] = elements_.size();
  j["num_classes"] = classes_.size();
  j["cycle_types_separate"] = cycle_types_separate_;
  j["char_polys_separate"] = char_polys_separate_;
  j["classes"] = nlohmann::json::array();
  for (const auto& c : classes_) {
    j["classes"].push_back({{"id", c.id},
                            {"cycle_type", c.cycle_type.to_string()},
                            {"order", c.order},
                            {"size", c.size},
                            {"char_poly", c.char_poly},
                            {"fixed_lines", c.fixed_lines},
                            {"pic_traces", c.pic_traces},
                            {"representative", c.representative.images()}});
  }
  return j;
}

}  // namespace delpezzo
