#pragma once

// Finite fields F_{p^k} as quotients of F_p[x] by a fixed irreducible, and
// univariate polynomials over them.
//
// An element is an index in [0, p^k): its base-p digits, least significant
// first, are the coordinates on 1, x, ..., x^{k-1}. Indices 0..p-1 are the
// prime subfield, 0 is zero and 1 is one in every field.
//
// The modulus of F_{p^k} is the monic irreducible x^k + c_{k-1}x^{k-1} + ...
// + c_0 whose lower coefficients, read as the integer sum c_i p^i, are least.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace delpezzo {

using Elem = std::uint32_t;

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kMaxFieldSize = 1u << 20;

bool is_prime(std::uint64_t n);

class Field {
 public:
  // Prefer field(p, k), which caches; construction builds log tables.
  Field(int p, int k);

  int p() const { return p_; }
  int k() const { return k_; }
  std::uint32_t size() const { return q_; }
  // Coefficients of the modulus over F_p, constant first, length k + 1.
  const std::vector<int>& modulus() const { return modulus_; }
  // Generator of the multiplicative group used for the log tables.
  Elem primitive() const { return exp_[1]; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
      const Elem s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_zech(a, b);
  }
  Elem neg(Elem a) const { return p_ == 2 ? a : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

  // Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }
  // primitive()^i for 0 <= i < 2(q - 1).
  Elem exp(std::uint32_t i) const { return exp_[i]; }
  const std::vector<std::uint32_t>& log_table() const { return log_; }
  const std::vector<Elem>& exp_table() const { return exp_; }
  // Row-major q x q sums for odd p, k > 1, q <= 2048, padded by two entries;
  // empty otherwise.
  const std::vector<std::uint16_t>& add_table() const { return add_table_; }

  // Image of an integer in the prime subfield.
  Elem from_int(long long n) const;
  std::vector<int> digits(Elem a) const;
  Elem from_digits(std::span<const int> d) const;
  bool in_prime_field(Elem a) const { return a < static_cast<Elem>(p_); }

  void check(Elem a) const {
    if (a >= q_) throw FieldError("element index out of range");
  }

 private:
  Elem add_digits(Elem a, Elem b) const;
  // a + b = a (1 + b / a) with zech_[i] = log(1 + g^i), kNoLog when 1 + g^i = 0.
  Elem add_zech(Elem a, Elem b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t n = q_ - 1;
    std::uint32_t d = log_[b] + n - log_[a];
    if (d >= n) d -= n;
    const std::uint32_t z = zech_[d];
    return z == kNoLog ? 0 : exp_[log_[a] + z];
  }
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  int p_;
  int k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<Elem> neg_;
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint32_t> zech_;
};

// Shared, immutable field for (p, k); thread-safe.
const Field& field(int p, int k);

// Ring embedding F_{p^a} -> F_{p^b}, a | b, sending x to the least root of
// the source modulus in the destination.
class Embedding {
 public:
  Embedding(const Field& src, const Field& dst);
  const Field& src() const { return *src_; }
  const Field& dst() const { return *dst_; }
  Elem image_of_x() const { return root_; }
  Elem operator()(Elem a) const { return table_[a]; }

 private:
  const Field* src_;
  const Field* dst_;
  Elem root_ = 0;
  std::vector<Elem> table_;
};

Embedding embed(const Field& src, const Field& dst);

class UniPoly {
 public:
  explicit UniPoly(const Field& f, std::vector<Elem> coeffs = {});

  static UniPoly constant(const Field& f, Elem c) { return UniPoly(f, {c}); }
  static UniPoly x(const Field& f) { return UniPoly(f, {0, 1}); }
  static UniPoly monomial(const Field& f, int degree, Elem c = 1);

  const Field& field() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(Elem c) const;
  UniPoly monic() const;
  UniPoly derivative() const;
  Elem eval(Elem at) const;
  // Coefficients pushed through an embedding into its destination field.
  UniPoly mapped(const Embedding& e) const;

  // Quotient and remainder; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

  bool operator==(const UniPoly& o) const { return f_ == o.f_ && c_ == o.c_; }

  // "[e0,e1,...]", constant term first; zero is "[]".
  std::string to_string() const;
  static UniPoly parse(const Field& f, std::string_view text);

 private:
  void strip();
  const Field* f_;
  std::vector<Elem> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);  // monic, or zero
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& mod);
bool is_irreducible(const UniPoly& f);
// Distinct roots in the coefficient field, ascending by index.
std::vector<Elem> roots(const UniPoly& f);

// All monic irreducibles of degree s over f, ordered by the integer value of
// their lower coefficients in base |f|. Throws FieldError if |f|^s > cap.
std::vector<UniPoly> monic_irreducibles(const Field& f, int s, std::uint64_t cap = kMaxFieldSize);

}  // namespace delpezzo
