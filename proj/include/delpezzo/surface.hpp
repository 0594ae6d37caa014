#pragma once

// Cubic surfaces F = 0 in P^3 over finite fields: lines, points, Picard
// traces, an operational smoothness certificate and the Frobenius class of
// the action on the 27 lines.
//
// Coefficients follow the graded lexicographic monomial order with
// x > y > z > w:
//   x^3 x^2y x^2z x^2w xy^2 xyz xyw xz^2 xzw xw^2
//   y^3 y^2z y^2w yz^2 yzw yw^2 z^3 z^2w zw^2 w^3
// Text form of one surface: "p k : c1,...,c20" with each c an element index
// of F_{p^k}, or for forms over F_{p^k}[u] a polynomial literal [e0,e1,...].

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "delpezzo/gf.hpp"
#include "delpezzo/kernels.hpp"
#include "delpezzo/labeled_graph.hpp"
#include "json.hpp"

namespace delpezzo {

class SurfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Budget exceeded before any work was done.
class BudgetError : public SurfaceError {
 public:
  using SurfaceError::SurfaceError;
};

// Counts incompatible with a smooth cubic surface with good reduction.
class NotSmoothError : public SurfaceError {
 public:
  using SurfaceError::SurfaceError;
};

using Point4 = std::array<Elem, 4>;
using Exponents = std::array<int, 4>;

inline constexpr std::array<Exponents, 20> kCubicMonomials = {{
    {3, 0, 0, 0}, {2, 1, 0, 0}, {2, 0, 1, 0}, {2, 0, 0, 1}, {1, 2, 0, 0},
    {1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 2, 0}, {1, 0, 1, 1}, {1, 0, 0, 2},
    {0, 3, 0, 0}, {0, 2, 1, 0}, {0, 2, 0, 1}, {0, 1, 2, 0}, {0, 1, 1, 1},
    {0, 1, 0, 2}, {0, 0, 3, 0}, {0, 0, 2, 1}, {0, 0, 1, 2}, {0, 0, 0, 3},
}};

int monomial_index(const Exponents& e);  // -1 if not a cubic monomial
std::string monomial_name(int i);        // e.g. "x^2*y"

class CubicForm {
 public:
  using Coeffs = std::array<Elem, 20>;

  // Throws SurfaceError if every coefficient is zero.
  CubicForm(const Field& f, const Coeffs& c);

  const Field& field() const { return *f_; }
  const Coeffs& coeffs() const { return c_; }
  Elem coeff(const Exponents& e) const;

  Elem eval(const Point4& p) const;
  Point4 gradient(const Point4& p) const;
  // Coefficients of t^0..t^3 in F(P + tR): F(P), R.grad F(P), P.grad F(R), F(R).
  std::array<Elem, 4> restrict_to_line(const Point4& p, const Point4& r) const;

  CubicForm mapped(const Embedding& e) const;
  // The same form over the degree-m extension F_{q^m}.
  CubicForm base_change(int m) const;
  // G(v) = F(A v) for a row-major 4x4 matrix A over the same field.
  CubicForm substituted(const std::array<Elem, 16>& a) const;

  std::string to_string() const;
  bool operator==(const CubicForm& o) const { return f_ == o.f_ && c_ == o.c_; }

 private:
  const Field* f_;
  Coeffs c_;
  // Per variable i and monomial m: e_i(m) * c_m and the index of m / x_i
  // among the quadratic monomials (-1 when x_i does not divide m).
  std::array<std::array<Elem, 20>, 4> dcoef_{};
  std::array<std::array<int, 20>, 4> dquad_{};
};

// A cubic form with coefficients in F_q[u].
class PolyCubicForm {
 public:
  PolyCubicForm(const Field& f, std::array<UniPoly, 20> c);
  const Field& field() const { return *f_; }
  const std::array<UniPoly, 20>& coeffs() const { return c_; }
  int max_degree() const;
  std::string to_string() const;

 private:
  const Field* f_;
  std::array<UniPoly, 20> c_;
};

// Reduction at the place given by a monic irreducible of degree s over F_q:
// coefficients are evaluated at the least root of the place in F_{q^s}.
// Returns nullopt when every coefficient vanishes there (a bad place).
std::optional<CubicForm> specialize(const PolyCubicForm& f, const UniPoly& place);
// Same, at an explicit root in field(p, k s).
std::optional<CubicForm> specialize_at(const PolyCubicForm& f, const Field& ext, Elem root);

using ParsedSurface = std::variant<CubicForm, PolyCubicForm>;
ParsedSurface parse_surface(std::string_view line);

// A line in P^3 as the row space of a 2x4 matrix in reduced row-echelon form.
struct Line {
  Point4 p;
  Point4 r;
  auto operator<=>(const Line&) const = default;
  bool operator==(const Line&) const = default;
  std::array<int, 2> pivots() const;
  std::string to_string() const;
};

struct LineSearch {
  std::vector<Line> lines;  // sorted
  // Some plane section has more than 3q + 1 affine points, so F has a plane
  // component or a non-reduced plane section; the list is then incomplete.
  bool degenerate = false;
  // Non-empty when the lines alone rule out a smooth surface: a degenerate
  // plane section, more than 27 lines, or four lines through one point.
  std::string not_smooth;
};

LineSearch find_lines(const CubicForm& f, kernels::Isa isa = kernels::best_isa());
// Lines over the coefficient field; throws BudgetError if q exceeds cap.
LineSearch lines_on_surface(const CubicForm& f, std::uint32_t cap = 1u << 16);

bool lines_meet(const Field& f, const Line& a, const Line& b);
// The common point of two distinct meeting lines, first nonzero coordinate 1.
std::optional<Point4> meeting_point(const Field& f, const Line& a, const Line& b);
// Entrywise x -> x^e.
Line power_map(const Field& f, const Line& l, std::uint64_t e);
// Labels: -1 on the diagonal, 1 for meeting lines, 0 for skew lines.
LabeledGraph intersection_graph(const Field& f, const std::vector<Line>& lines);

// #{P in P^3(F_q) : F(P) = 0}; throws BudgetError when q^3 > budget.
std::uint64_t count_points(const CubicForm& f, std::uint64_t budget = 1'000'000'000,
                           kernels::Isa isa = kernels::best_isa());
// t_j = (#X(F_{q^j}) - q^{2j} - 1) / q^j for j = 1..m_max. Throws BudgetError
// when q^{3 m_max} > budget and NotSmoothError on a non-integral or
// out-of-range value.
std::vector<int> trace_sequence(const CubicForm& f, int m_max, std::uint64_t budget = 1'000'000'000);

// A point of P^3 over the coefficient field where F and its gradient vanish.
std::optional<Point4> find_singular_point(const CubicForm& f);

enum class Smoothness { SmoothCertified, NotSmooth, Undetermined };
const char* to_string(Smoothness s);

struct SurfaceBudget {
  std::uint64_t points = 1'000'000'000;  // point counts over F_{q^m} while q^{3m} <= points
  std::uint64_t lines = 100'000'000;     // line searches over F_{q^m} while q^{2m} <= lines
  std::uint64_t singular = 10'000'000;   // singular search over F_{q^m} while q^{2m} <= singular
  int max_singular_degree = 3;
  // Point counts are skipped once the class is pinned by the 27 lines.
  bool traces_when_certified = true;
};

struct SurfaceAnalysis {
  Smoothness verdict = Smoothness::Undetermined;
  std::string reason;
  // Singular witness: coordinates in field(p, k * singular_degree).
  int singular_degree = 0;
  std::optional<Point4> singular_point;
  std::map<int, int> line_counts;             // m -> #lines over F_{q^m}
  std::map<int, std::uint64_t> point_counts;  // m -> #X(F_{q^m})
  std::map<int, int> traces;                  // m -> t_m
  int lines_field_degree = 0;                 // m at which all 27 lines were found
  std::optional<Permutation> frobenius;       // on the canonical Gamma_3 vertex order
  std::set<int> classes;                      // class ids consistent with the evidence
  // No singular point over the algebraic closure; set only when not certified.
  bool smooth_proven = false;

  std::set<int> splitting_degrees() const;
  nlohmann::json to_json() const;
};

// Whether the line l, lying on the surface, meets the singular locus over the
// algebraic closure (a common zero of the restricted partials).
bool line_meets_singular_locus(const CubicForm& f, const Line& l);

SurfaceAnalysis analyze_surface(const CubicForm& f, const SurfaceBudget& budget = {});

Smoothness smoothness_certificate(const CubicForm& f, const SurfaceBudget& budget = {});
// Ambiguity set of class ids. Throws NotSmoothError if the surface is NotSmooth
// or the evidence matches no class.
std::set<int> frobenius_class(const CubicForm& f, const SurfaceBudget& budget = {});
// Orders of the classes in frobenius_class.
std::set<int> splitting_degree(const CubicForm& f, const SurfaceBudget& budget = {});

}  // namespace delpezzo
