#include "delpezzo/surface.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "delpezzo/class_table.hpp"
#include "delpezzo/schlafli.hpp"

namespace delpezzo {

namespace {

constexpr const char* kVar = "xyzw";

// Quadratic monomial index of x_i x_j in grlex order.
constexpr int quad_index(int i, int j) {
  if (i > j) std::swap(i, j);
  constexpr int start[4] = {0, 4, 7, 9};
  return start[i] + (j - i);
}

// For every cubic monomial: (index of m / x_v, v) for its first variable v.
struct CubicSplit {
  int quad;
  int var;
};

constexpr std::array<CubicSplit, 20> make_splits() {
  std::array<CubicSplit, 20> s{};
  for (int m = 0; m < 20; ++m) {
    auto e = kCubicMonomials[m];
    int v = 0;
    while (e[v] == 0) ++v;
    --e[v];
    int a = -1, b = -1;
    for (int i = 0; i < 4; ++i) {
      for (int r = 0; r < e[i]; ++r) (a < 0 ? a : b) = i;
    }
    s[m] = {quad_index(a, b), v};
  }
  return s;
}

constexpr std::array<CubicSplit, 20> kSplits = make_splits();

std::array<Elem, 10> quadratics(const Field& f, const Point4& p) {
  std::array<Elem, 10> q{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) q[quad_index(i, j)] = f.mul(p[i], p[j]);
  }
  return q;
}

// Saturating q^e.
std::uint64_t spow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    r *= q;
  }
  return r;
}

// Largest m with p^(k m) within the field size cap.
int max_extension(const Field& f) {
  int m = 0;
  while (spow(f.size(), m + 1) <= kMaxFieldSize) ++m;
  return m;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

long long parse_int(std::string_view s, const char* what) {
  const std::string t = trim(s);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw SurfaceError(std::string("bad ") + what + ": '" + t + "'");
  }
  return v;
}

// Small polynomials of degree <= 3, constant first; deg -1 is zero.
struct SmallPoly {
  std::array<Elem, 4> c{};
  int deg = -1;

  void normalize() {
    deg = 3;
    while (deg >= 0 && c[deg] == 0) --deg;
  }
};

SmallPoly small_rem(const Field& f, SmallPoly a, const SmallPoly& b) {
  const Elem inv = f.inv(b.c[b.deg]);
  while (a.deg >= b.deg) {
    const Elem factor = f.mul(a.c[a.deg], inv);
    const int shift = a.deg - b.deg;
    for (int i = 0; i <= b.deg; ++i) a.c[i + shift] = f.sub(a.c[i + shift], f.mul(factor, b.c[i]));
    a.normalize();
  }
  return a;
}

SmallPoly small_gcd(const Field& f, SmallPoly a, SmallPoly b) {
  while (b.deg >= 0) {
    SmallPoly r = small_rem(f, a, b);
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

int monomial_index(const Exponents& e) {
  for (int m = 0; m < 20; ++m) {
    if (kCubicMonomials[m] == e) return m;
  }
  return -1;
}

std::string monomial_name(int i) {
  std::string out;
  for (int v = 0; v < 4; ++v) {
    const int e = kCubicMonomials.at(i)[v];
    if (!e) continue;
    if (!out.empty()) out += '*';
    out += kVar[v];
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

CubicForm::CubicForm(const Field& f, const Coeffs& c) : f_(&f), c_(c) {
  bool any = false;
  for (Elem x : c_) {
    f.check(x);
    any = any || x != 0;
  }
  if (!any) throw SurfaceError("the zero form does not define a surface");
  for (int i = 0; i < 4; ++i) {
    for (int m = 0; m < 20; ++m) {
      auto e = kCubicMonomials[m];
      if (e[i] == 0) {
        dcoef_[i][m] = 0;
        dquad_[i][m] = -1;
        continue;
      }
      dcoef_[i][m] = f.mul(f.from_int(e[i]), c_[m]);
      --e[i];
      int a = -1, b = -1;
      for (int v = 0; v < 4; ++v) {
        for (int r = 0; r < e[v]; ++r) (a < 0 ? a : b) = v;
      }
      dquad_[i][m] = quad_index(a, b);
    }
  }
}

Elem CubicForm::coeff(const Exponents& e) const {
  const int m = monomial_index(e);
  if (m < 0) throw SurfaceError("not a cubic monomial");
  return c_[m];
}

Elem CubicForm::eval(const Point4& p) const {
  const Field& f = *f_;
  const auto q = quadratics(f, p);
  Elem s = 0;
  for (int m = 0; m < 20; ++m) {
    if (c_[m]) s = f.add(s, f.mul(c_[m], f.mul(q[kSplits[m].quad], p[kSplits[m].var])));
  }
  return s;
}

Point4 CubicForm::gradient(const Point4& p) const {
  const Field& f = *f_;
  const auto q = quadratics(f, p);
  Point4 g{};
  for (int i = 0; i < 4; ++i) {
    Elem s = 0;
    for (int m = 0; m < 20; ++m) {
      if (dcoef_[i][m]) s = f.add(s, f.mul(dcoef_[i][m], q[dquad_[i][m]]));
    }
    g[i] = s;
  }
  return g;
}

namespace {

Elem dot(const Field& f, const Point4& a, const Point4& b) {
  Elem s = 0;
  for (int i = 0; i < 4; ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

}  // namespace

std::array<Elem, 4> CubicForm::restrict_to_line(const Point4& p, const Point4& r) const {
  const Field& f = *f_;
  return {eval(p), dot(f, r, gradient(p)), dot(f, p, gradient(r)), eval(r)};
}

CubicForm CubicForm::mapped(const Embedding& e) const {
  if (&e.src() != f_) throw SurfaceError("embedding source is not the coefficient field");
  Coeffs c{};
  for (int m = 0; m < 20; ++m) c[m] = e(c_[m]);
  return CubicForm(e.dst(), c);
}

CubicForm CubicForm::base_change(int m) const {
  if (m < 1) throw SurfaceError("extension degree must be positive");
  if (m == 1) return *this;
  if (spow(f_->size(), m) > kMaxFieldSize) throw BudgetError("extension field exceeds the field size cap");
  return mapped(embed(*f_, delpezzo::field(f_->p(), f_->k() * m)));
}

CubicForm CubicForm::substituted(const std::array<Elem, 16>& a) const {
  const Field& f = *f_;
  using Poly = std::map<Exponents, Elem>;
  auto mul = [&](const Poly& x, const Poly& y) {
    Poly out;
    for (const auto& [ex, cx] : x) {
      for (const auto& [ey, cy] : y) {
        Exponents e{};
        for (int i = 0; i < 4; ++i) e[i] = ex[i] + ey[i];
        Elem& slot = out[e];
        slot = f.add(slot, f.mul(cx, cy));
      }
    }
    return out;
  };
  std::array<Poly, 4> lin;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Exponents e{};
      e[j] = 1;
      if (a[4 * i + j]) lin[i][e] = a[4 * i + j];
    }
  }
  Coeffs out{};
  for (int m = 0; m < 20; ++m) {
    if (!c_[m]) continue;
    Poly term{{Exponents{}, c_[m]}};
    for (int v = 0; v < 4; ++v) {
      for (int r = 0; r < kCubicMonomials[m][v]; ++r) term = mul(term, lin[v]);
    }
    for (const auto& [e, c] : term) {
      const int idx = monomial_index(e);
      out[idx] = f.add(out[idx], c);
    }
  }
  return CubicForm(f, out);
}

std::string CubicForm::to_string() const {
  std::ostringstream os;
  os << f_->p() << ' ' << f_->k() << " : ";
  for (int m = 0; m < 20; ++m) os << (m ? "," : "") << c_[m];
  return os.str();
}

PolyCubicForm::PolyCubicForm(const Field& f, std::array<UniPoly, 20> c) : f_(&f), c_(std::move(c)) {
  bool any = false;
  for (const auto& x : c_) {
    if (&x.field() != f_) throw SurfaceError("coefficient over the wrong field");
    any = any || !x.is_zero();
  }
  if (!any) throw SurfaceError("the zero form does not define a surface");
}

int PolyCubicForm::max_degree() const {
  int d = -1;
  for (const auto& x : c_) d = std::max(d, x.degree());
  return d;
}

std::string PolyCubicForm::to_string() const {
  std::ostringstream os;
  os << f_->p() << ' ' << f_->k() << " : ";
  for (int m = 0; m < 20; ++m) os << (m ? "," : "") << c_[m].to_string();
  return os.str();
}

std::optional<CubicForm> specialize_at(const PolyCubicForm& f, const Field& ext, Elem root) {
  const Field& base = f.field();
  if (ext.p() != base.p() || ext.k() % base.k() != 0) throw SurfaceError("not an extension of the coefficient field");
  const Embedding e = embed(base, ext);
  CubicForm::Coeffs c{};
  bool any = false;
  for (int m = 0; m < 20; ++m) {
    c[m] = f.coeffs()[m].mapped(e).eval(root);
    any = any || c[m] != 0;
  }
  if (!any) return std::nullopt;
  return CubicForm(ext, c);
}

std::optional<CubicForm> specialize(const PolyCubicForm& f, const UniPoly& place) {
  const Field& base = f.field();
  if (&place.field() != &base) throw SurfaceError("place over the wrong field");
  if (place.degree() < 1 || place.leading() != 1 || !is_irreducible(place)) {
    throw SurfaceError("a place must be a monic irreducible polynomial");
  }
  const int s = place.degree();
  if (spow(base.size(), s) > kMaxFieldSize) throw BudgetError("residue field exceeds the field size cap");
  const Field& ext = field(base.p(), base.k() * s);
  const auto rs = roots(place.mapped(embed(base, ext)));
  return specialize_at(f, ext, rs.front());
}

ParsedSurface parse_surface(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) throw SurfaceError("expected 'p k : c1,...,c20'");
  std::istringstream head{std::string(line.substr(0, colon))};
  std::string ps, ks, extra;
  if (!(head >> ps >> ks) || (head >> extra)) throw SurfaceError("expected 'p k' before ':'");
  const long long p = parse_int(ps, "characteristic"), k = parse_int(ks, "extension degree");
  if (p < 2 || k < 1 || k > 64) throw SurfaceError("bad field parameters");
  const Field* fp = nullptr;
  try {
    fp = &field(static_cast<int>(p), static_cast<int>(k));
  } catch (const FieldError& e) {
    throw SurfaceError(std::string("bad field: ") + e.what());
  }
  const Field& f = *fp;

  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char ch : line.substr(colon + 1)) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth < 0) throw SurfaceError("unbalanced brackets");
    if (ch == ',' && depth == 0) {
      tokens.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw SurfaceError("unbalanced brackets");
  tokens.push_back(trim(cur));
  if (tokens.size() != 20) throw SurfaceError("expected 20 coefficients, got " + std::to_string(tokens.size()));

  const bool poly = std::any_of(tokens.begin(), tokens.end(), [](const std::string& t) { return !t.empty() && t[0] == '['; });
  if (poly) {
    std::vector<UniPoly> cs;
    for (const auto& t : tokens) {
      try {
        if (!t.empty() && t[0] == '[') {
          cs.push_back(UniPoly::parse(f, t));
        } else {
          const long long v = parse_int(t, "coefficient");
          if (v < 0 || v >= f.size()) throw SurfaceError("coefficient out of range: " + t);
          cs.push_back(UniPoly::constant(f, static_cast<Elem>(v)));
        }
      } catch (const FieldError& e) {
        throw SurfaceError(std::string("bad coefficient: ") + e.what());
      }
    }
    std::array<UniPoly, 20> arr{cs[0], cs[1], cs[2], cs[3], cs[4], cs[5], cs[6], cs[7], cs[8], cs[9],
                                cs[10], cs[11], cs[12], cs[13], cs[14], cs[15], cs[16], cs[17], cs[18], cs[19]};
    return PolyCubicForm(f, std::move(arr));
  }
  CubicForm::Coeffs c{};
  for (int m = 0; m < 20; ++m) {
    const long long v = parse_int(tokens[m], "coefficient");
    if (v < 0 || v >= f.size()) throw SurfaceError("coefficient out of range: " + tokens[m]);
    c[m] = static_cast<Elem>(v);
  }
  return CubicForm(f, c);
}

std::array<int, 2> Line::pivots() const {
  auto first = [](const Point4& v) {
    for (int i = 0; i < 4; ++i) {
      if (v[i]) return i;
    }
    return -1;
  };
  return {first(p), first(r)};
}

std::string Line::to_string() const {
  std::ostringstream os;
  os << '[' << p[0] << ',' << p[1] << ',' << p[2] << ',' << p[3] << ';' << r[0] << ',' << r[1] << ',' << r[2] << ','
     << r[3] << ']';
  return os.str();
}

namespace {

// Points base + sum s_i e_{free_i} of one parametrized family.
struct Family {
  Point4 base;
  std::vector<int> free;
};

Point4 unit(int i) {
  Point4 e{};
  e[i] = 1;
  return e;
}

Point4 axpy(const Field& f, const Point4& x, Elem t, const Point4& y) {
  Point4 o;
  for (int i = 0; i < 4; ++i) o[i] = f.add(x[i], f.mul(t, y[i]));
  return o;
}

class LineFinder {
 public:
  LineFinder(const CubicForm& form, kernels::Isa isa) : F(form), f(form.field()), scan(form.field(), isa) {
    bound = 3ull * f.size() + 1;
  }

  // Points of the line {p + t r} on F, in increasing t.
  void line_points(const Point4& p, const Point4& r, std::vector<Point4>& out) {
    const auto c = F.restrict_to_line(p, r);
    roots.clear();
    scan.collect(c[3], c[2], c[1], c[0], roots);
    for (Elem t : roots) out.push_back(axpy(f, p, t, r));
  }

  // All points of a family on F; false if a plane family exceeds 3q + 1.
  bool family_points(const Family& fam, std::vector<Point4>& out) {
    out.clear();
    if (fam.free.empty()) {
      if (F.eval(fam.base) == 0) out.push_back(fam.base);
    } else if (fam.free.size() == 1) {
      line_points(fam.base, unit(fam.free[0]), out);
    } else {
      const Point4 dir = unit(fam.free[1]);
      for (Elem s = 0; s < f.size(); ++s) {
        Point4 b = fam.base;
        b[fam.free[0]] = s;
        line_points(b, dir, out);
        if (out.size() > bound) return false;
      }
    }
    return true;
  }

  // Members R of fam with F(R) = 0 and g.R = 0, appended to out.
  bool solve(const Family& fam, const Point4& g, std::vector<Point4>& out, std::vector<Point4>& all, bool& all_ready) {
    const Elem c = dot(f, g, fam.base);
    auto everything = [&]() {
      if (!all_ready) {
        if (!family_points(fam, all)) return false;
        all_ready = true;
      }
      out.insert(out.end(), all.begin(), all.end());
      return true;
    };
    if (fam.free.empty()) {
      if (c == 0 && F.eval(fam.base) == 0) out.push_back(fam.base);
      return true;
    }
    if (fam.free.size() == 1) {
      const int j = fam.free[0];
      if (g[j]) {
        Point4 r = fam.base;
        r[j] = f.neg(f.div(c, g[j]));
        if (F.eval(r) == 0) out.push_back(r);
        return true;
      }
      return c ? true : everything();
    }
    const int j1 = fam.free[0], j2 = fam.free[1];
    if (g[j2]) {
      Point4 r0 = fam.base;
      r0[j2] = f.neg(f.div(c, g[j2]));
      Point4 r1 = unit(j1);
      r1[j2] = f.neg(f.div(g[j1], g[j2]));
      line_points(r0, r1, out);
      return true;
    }
    if (g[j1]) {
      Point4 r0 = fam.base;
      r0[j1] = f.neg(f.div(c, g[j1]));
      line_points(r0, unit(j2), out);
      return true;
    }
    return c ? true : everything();
  }

  LineSearch run() {
    LineSearch res;
    const std::array<std::pair<Family, Family>, 6> patterns = {{
        {{unit(0), {2, 3}}, {unit(1), {2, 3}}},
        {{unit(0), {1, 3}}, {unit(2), {3}}},
        {{unit(0), {1, 2}}, {unit(3), {}}},
        {{unit(1), {3}}, {unit(2), {3}}},
        {{unit(1), {2}}, {unit(3), {}}},
        {{unit(2), {}}, {unit(3), {}}},
    }};
    std::vector<Point4> sp, cand, all;
    for (const auto& [pf, rf] : patterns) {
      if (!family_points(pf, sp)) {
        res.degenerate = true;
        return res;
      }
      bool all_ready = false;
      for (const Point4& p : sp) {
        const Point4 g = F.gradient(p);
        cand.clear();
        if (!solve(rf, g, cand, all, all_ready)) {
          res.degenerate = true;
          return res;
        }
        for (const Point4& r : cand) {
          if (F.eval(r) == 0 && dot(f, r, g) == 0 && dot(f, p, F.gradient(r)) == 0) res.lines.push_back({p, r});
        }
      }
    }
    std::sort(res.lines.begin(), res.lines.end());
    return res;
  }

 private:
  const CubicForm& F;
  const Field& f;
  kernels::CubicRootScanner scan;
  std::uint64_t bound;
  std::vector<Elem> roots;
};

}  // namespace

LineSearch find_lines(const CubicForm& form, kernels::Isa isa) {
  LineSearch res = LineFinder(form, isa).run();
  const Field& f = form.field();
  if (res.degenerate) {
    res.not_smooth = "a plane section has more than 3q+1 points";
  } else if (res.lines.size() > 27) {
    res.not_smooth = std::to_string(res.lines.size()) + " lines";
  } else {
    // At most three lines of a smooth cubic surface pass through a point.
    std::map<Point4, LineMask> through;
    for (std::size_t i = 0; i < res.lines.size(); ++i) {
      for (std::size_t j = i + 1; j < res.lines.size(); ++j) {
        if (auto x = meeting_point(f, res.lines[i], res.lines[j])) {
          LineMask& m = through[*x];
          m |= (LineMask{1} << i) | (LineMask{1} << j);
          if (std::popcount(m) >= 4) {
            res.not_smooth = std::to_string(std::popcount(m)) + " or more lines through one point";
            return res;
          }
        }
      }
    }
  }
  return res;
}

LineSearch lines_on_surface(const CubicForm& f, std::uint32_t cap) {
  if (f.field().size() > cap) throw BudgetError("field too large for a line search");
  return find_lines(f);
}

bool lines_meet(const Field& f, const Line& a, const Line& b) {
  std::array<Point4, 4> m = {a.p, a.r, b.p, b.r};
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int i = rank; i < 4; ++i) {
      if (m[i][col]) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    const Elem inv = f.inv(m[rank][col]);
    for (int i = rank + 1; i < 4; ++i) {
      if (!m[i][col]) continue;
      const Elem factor = f.mul(m[i][col], inv);
      for (int j = col; j < 4; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank < 4;
}

std::optional<Point4> meeting_point(const Field& f, const Line& a, const Line& b) {
  // Kernel of the 4x4 system x1 a.p + x2 a.r = x3 b.p + x4 b.r, columns as unknowns.
  std::array<std::array<Elem, 4>, 4> m;
  for (int i = 0; i < 4; ++i) m[i] = {a.p[i], a.r[i], f.neg(b.p[i]), f.neg(b.r[i])};
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int piv = -1;
    for (int i = rank; i < 4; ++i) {
      if (m[i][col]) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    const Elem inv = f.inv(m[rank][col]);
    for (int j = 0; j < 4; ++j) m[rank][j] = f.mul(m[rank][j], inv);
    for (int i = 0; i < 4; ++i) {
      if (i == rank || !m[i][col]) continue;
      const Elem factor = m[i][col];
      for (int j = 0; j < 4; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[rank][j]));
    }
    pivot_col[rank++] = col;
  }
  if (rank != 3) return std::nullopt;
  int free_col = 0;
  while (std::find(pivot_col.begin(), pivot_col.begin() + 3, free_col) != pivot_col.begin() + 3) ++free_col;
  std::array<Elem, 4> x{};
  x[free_col] = 1;
  for (int r = 0; r < 3; ++r) x[pivot_col[r]] = f.neg(m[r][free_col]);
  Point4 pt;
  for (int i = 0; i < 4; ++i) pt[i] = f.add(f.mul(x[0], a.p[i]), f.mul(x[1], a.r[i]));
  int lead = 0;
  while (pt[lead] == 0) ++lead;
  const Elem inv = f.inv(pt[lead]);
  for (auto& c : pt) c = f.mul(c, inv);
  return pt;
}

Line power_map(const Field& f, const Line& l, std::uint64_t e) {
  Line o;
  for (int i = 0; i < 4; ++i) {
    o.p[i] = f.pow(l.p[i], e);
    o.r[i] = f.pow(l.r[i], e);
  }
  return o;
}

LabeledGraph intersection_graph(const Field& f, const std::vector<Line>& lines) {
  const int n = static_cast<int>(lines.size());
  std::vector<int> labels(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int v = lines_meet(f, lines[i], lines[j]) ? 1 : 0;
      labels[static_cast<std::size_t>(i) * n + j] = labels[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return LabeledGraph(n, std::move(labels));
}

std::uint64_t count_points(const CubicForm& form, std::uint64_t budget, kernels::Isa isa) {
  const Field& f = form.field();
  const std::uint32_t q = f.size();
  if (spow(q, 3) > budget) throw BudgetError("point count exceeds the budget");
  const kernels::CubicRootScanner scan(f, isa);
  auto count_line = [&](const Point4& p, const Point4& r) {
    const auto c = form.restrict_to_line(p, r);
    return static_cast<std::uint64_t>(scan.count(c[3], c[2], c[1], c[0]));
  };
  // P^3 = {(x,y,z,1)} + {(x,y,1,0)} + {(x,1,0,0)} + {(1,0,0,0)}.
  std::uint64_t n = 0;
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) n += count_line({x, y, 0, 1}, unit(2));
    n += count_line({x, 0, 1, 0}, unit(1));
  }
  n += count_line(unit(1), unit(0));
  n += form.eval(unit(0)) == 0 ? 1 : 0;
  return n;
}

std::vector<int> trace_sequence(const CubicForm& f, int m_max, std::uint64_t budget) {
  const std::uint64_t q = f.field().size();
  if (m_max < 1) return {};
  if (spow(q, 3 * m_max) > budget) throw BudgetError("trace sequence exceeds the point budget");
  std::vector<int> out;
  for (int m = 1; m <= m_max; ++m) {
    const std::uint64_t n = count_points(f.base_change(m), budget);
    const std::uint64_t qm = spow(q, m);
    const long long diff = static_cast<long long>(n) - static_cast<long long>(qm * qm + 1);
    if (diff % static_cast<long long>(qm) != 0) throw NotSmoothError("point count is not of the form q^2 + q t + 1");
    const long long t = diff / static_cast<long long>(qm);
    if (t < -7 || t > 7) throw NotSmoothError("Picard trace out of range");
    out.push_back(static_cast<int>(t));
  }
  return out;
}

std::optional<Point4> find_singular_point(const CubicForm& form) {
  const Field& f = form.field();
  const std::uint32_t q = f.size();
  const kernels::CubicRootScanner scan(f);
  std::vector<Elem> rs;
  // Common zeros of F and grad F on the line p + t r.
  auto on_line = [&](const Point4& p, const Point4& r, const Point4& gr) -> std::optional<Point4> {
    const Point4 gp = form.gradient(p);
    const Point4 gs = form.gradient(axpy(f, p, 1, r));
    SmallPoly g;
    g.c = {form.eval(p), dot(f, r, gp), dot(f, p, gr), form.eval(r)};
    g.normalize();
    for (int i = 0; i < 4 && g.deg != 0; ++i) {
      // G(p + t r) = G(p) + t (G(p + r) - G(p) - G(r)) + t^2 G(r).
      SmallPoly d;
      d.c = {gp[i], f.sub(f.sub(gs[i], gp[i]), gr[i]), gr[i], 0};
      d.normalize();
      g = small_gcd(f, d, g);
    }
    if (g.deg == 0) return std::nullopt;
    rs.clear();
    if (g.deg < 0) {
      rs.push_back(0);
    } else {
      scan.collect(g.c[3], g.c[2], g.c[1], g.c[0], rs);
    }
    if (rs.empty()) return std::nullopt;
    return axpy(f, p, rs.front(), r);
  };
  const Point4 gz = form.gradient(unit(2)), gy = form.gradient(unit(1)), gx = form.gradient(unit(0));
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) {
      if (auto s = on_line({x, y, 0, 1}, unit(2), gz)) return s;
    }
  }
  for (Elem x = 0; x < q; ++x) {
    if (auto s = on_line({x, 0, 1, 0}, unit(1), gy)) return s;
  }
  if (auto s = on_line(unit(1), unit(0), gx)) return s;
  if (form.eval(unit(0)) == 0 && gx == Point4{}) return unit(0);
  return std::nullopt;
}

bool line_meets_singular_locus(const CubicForm& form, const Line& l) {
  const Field& f = form.field();
  const Point4 gp = form.gradient(l.p), gr = form.gradient(l.r);
  if (gr == Point4{}) return true;
  const Point4 gs = form.gradient(axpy(f, l.p, 1, l.r));
  // Affine zeros t of the partials at p + t r; the point r was checked above.
  SmallPoly g;
  g.deg = -1;
  for (int i = 0; i < 4; ++i) {
    SmallPoly d;
    d.c = {gp[i], f.sub(f.sub(gs[i], gp[i]), gr[i]), gr[i], 0};
    d.normalize();
    g = small_gcd(f, d, g);
  }
  return g.deg != 0;
}

const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::SmoothCertified:
      return "SmoothCertified";
    case Smoothness::NotSmooth:
      return "NotSmooth";
    case Smoothness::Undetermined:
      return "Undetermined";
  }
  return "?";
}

std::set<int> SurfaceAnalysis::splitting_degrees() const {
  const auto& table = ClassTable::get();
  std::set<int> out;
  for (int c : classes) out.insert(table.info(c).order);
  return out;
}

nlohmann::json SurfaceAnalysis::to_json() const {
  nlohmann::json j;
  j["verdict"] = delpezzo::to_string(verdict);
  j["reason"] = reason;
  auto int_map = [](const auto& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : m) o[std::to_string(k)] = v;
    return o;
  };
  j["line_counts"] = int_map(line_counts);
  j["point_counts"] = int_map(point_counts);
  j["traces"] = int_map(traces);
  j["lines_field_degree"] = lines_field_degree;
  j["frobenius"] = frobenius ? nlohmann::json(frobenius->images()) : nlohmann::json(nullptr);
  j["classes"] = classes;
  j["smooth_proven"] = smooth_proven;
  j["splitting_degrees"] = splitting_degrees();
  if (singular_point) {
    j["singular_point"] = {{"degree", singular_degree}, {"coordinates", *singular_point}};
  } else {
    j["singular_point"] = nullptr;
  }
  return j;
}

SurfaceAnalysis analyze_surface(const CubicForm& f, const SurfaceBudget& budget) {
  const auto& table = ClassTable::get();
  const Field& base = f.field();
  const std::uint64_t q = base.size();
  const int max_m = max_extension(base);
  SurfaceAnalysis a;
  for (const auto& c : table.classes()) a.classes.insert(c.id);
  bool certified = false;

  auto keep = [&](auto pred) {
    for (auto it = a.classes.begin(); it != a.classes.end();) it = pred(table.info(*it)) ? std::next(it) : a.classes.erase(it);
  };
  // Singular search over F_{q^m}, m <= max_singular_degree, within budget.
  int searched = 0;
  auto search_singular = [&]() {
    for (int m = 1; m <= std::min(budget.max_singular_degree, max_m) && spow(q, 2 * m) <= budget.singular; ++m) {
      searched = m;
      if (auto s = find_singular_point(f.base_change(m))) {
        a.singular_degree = m;
        a.singular_point = s;
        return true;
      }
    }
    return false;
  };
  auto not_smooth = [&](std::string why) {
    a.verdict = Smoothness::NotSmooth;
    a.reason = std::move(why);
    a.classes.clear();
    if (!a.singular_point) search_singular();
    return a;
  };

  // Lines over F_{q^m}; returns a NotSmooth reason or an empty string.
  auto lines_at = [&](int m) -> std::string {
    const CubicForm fm = f.base_change(m);
    const Field& ext = fm.field();
    const LineSearch ls = find_lines(fm);
    const std::string where = " over F_" + std::to_string(spow(q, m));
    if (!ls.not_smooth.empty()) return ls.not_smooth + where;
    for (int d = 1; d <= m; ++d) {
      if (m % d) continue;
      const std::uint64_t e = spow(q, d);
      int n = 0;
      for (const auto& l : ls.lines) n += power_map(ext, l, e) == l;
      a.line_counts[d] = n;
      keep([&](const ClassInfo& c) { return c.fixed_lines[d] == n; });
    }
    if (ls.lines.size() != 27) return {};
    const auto iso = find_isomorphism(table.graph().graph, intersection_graph(ext, ls.lines));
    if (!iso) return "27 lines" + where + " with the wrong incidence";
    std::vector<int> phi(27);
    for (int j = 0; j < 27; ++j) {
      const Line img = power_map(ext, ls.lines[j], q);
      phi[j] = static_cast<int>(std::lower_bound(ls.lines.begin(), ls.lines.end(), img) - ls.lines.begin());
    }
    const Permutation& fi = *iso;
    const Permutation finv = fi.inverse();
    std::vector<int> sigma(27);
    for (int i = 0; i < 27; ++i) sigma[i] = finv(phi[fi(i)]);
    const Permutation s(sigma);
    const int cls = table.class_of(s);
    a.frobenius = s;
    a.lines_field_degree = m;
    keep([&](const ClassInfo& c) { return c.id == cls; });
    certified = true;
    return {};
  };

  std::set<int> tried;
  for (int m = 1; !certified && !a.classes.empty();) {
    if (m > max_m || spow(q, 2 * m) > budget.lines || tried.count(m)) break;
    tried.insert(m);
    if (auto why = lines_at(m); !why.empty()) return not_smooth(why);
    if (a.classes.empty()) break;
    // Survivors have orders not dividing m; the least one is the next field.
    m = std::numeric_limits<int>::max();
    for (int c : a.classes) m = std::min(m, table.info(c).order);
  }

  if (!certified || budget.traces_when_certified) {
    for (int m = 1; m <= std::min(kMaxPower, max_m) && spow(q, 3 * m) <= budget.points; ++m) {
      const std::uint64_t n = count_points(f.base_change(m), budget.points);
      const std::uint64_t qm = spow(q, m);
      a.point_counts[m] = n;
      const long long diff = static_cast<long long>(n) - static_cast<long long>(qm * qm + 1);
      if (diff % static_cast<long long>(qm) != 0) {
        return not_smooth("#X(F_" + std::to_string(qm) + ") = " + std::to_string(n) + " is not q^2 + q t + 1");
      }
      const long long t = diff / static_cast<long long>(qm);
      if (t < -7 || t > 7) return not_smooth("Picard trace " + std::to_string(t) + " out of range");
      a.traces[m] = static_cast<int>(t);
      keep([&](const ClassInfo& c) { return c.pic_traces[m] == t; });
    }
  }

  if (!certified && search_singular()) {
    return not_smooth("singular point over F_" + std::to_string(spow(q, a.singular_degree)));
  }

  if (a.classes.empty()) return not_smooth("line and point counts match no Frobenius class");

  // A singular point of degree 4 forces four conjugate nodes, and the two
  // lines joining opposite nodes are defined over F_{q^2}. Every other
  // singular locus has a point of degree at most 3.
  if (!certified && searched >= 3 && 2 <= max_m && spow(q, 4) <= budget.lines) {
    const CubicForm f2 = f.base_change(2);
    const LineSearch ls = find_lines(f2);
    if (!ls.not_smooth.empty()) return not_smooth(ls.not_smooth + " over F_" + std::to_string(spow(q, 2)));
    for (const auto& l : ls.lines) {
      if (line_meets_singular_locus(f2, l)) {
        return not_smooth("a line over F_" + std::to_string(spow(q, 2)) + " meets the singular locus");
      }
    }
    a.smooth_proven = true;
  }
  a.verdict = certified ? Smoothness::SmoothCertified : Smoothness::Undetermined;
  if (certified) {
    a.reason = "27 lines over F_" + std::to_string(spow(q, a.lines_field_degree)) + " with the Schlafli incidence";
  } else {
    a.reason = a.smooth_proven ? "no singular point of degree <= 4; lines not split within budget"
                               : "no certificate within budget";
  }
  return a;
}

Smoothness smoothness_certificate(const CubicForm& f, const SurfaceBudget& budget) {
  return analyze_surface(f, budget).verdict;
}

std::set<int> frobenius_class(const CubicForm& f, const SurfaceBudget& budget) {
  const auto a = analyze_surface(f, budget);
  if (a.verdict == Smoothness::NotSmooth) throw NotSmoothError(a.reason);
  return a.classes;
}

std::set<int> splitting_degree(const CubicForm& f, const SurfaceBudget& budget) {
  const auto a = analyze_surface(f, budget);
  if (a.verdict == Smoothness::NotSmooth) throw NotSmoothError(a.reason);
  return a.splitting_degrees();
}

}  // namespace delpezzo
