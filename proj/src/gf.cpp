#include "delpezzo/gf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>

namespace delpezzo {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p with int coefficients, constant first, trimmed.
using FpPoly = std::vector<int>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1, e = p - 2, b = a % p;
  while (e) {
    if (e & 1) r = static_cast<int>(1LL * r * b % p);
    b = static_cast<int>(1LL * b * b % p);
    e >>= 1;
  }
  return r;
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lc_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = static_cast<int>(1LL * a.back() * lc_inv % p);
    for (int i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<int>(((a[shift + i] - 1LL * c * m[i]) % p + p) % p);
    }
    trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, int p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % p);
    }
  }
  return fp_mod(std::move(r), m, p);
}

FpPoly fp_gcd(FpPoly a, FpPoly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = fp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

FpPoly fp_powmod(FpPoly base, std::uint64_t e, const FpPoly& m, int p) {
  FpPoly r{1};
  r = fp_mod(r, m, p);
  base = fp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = fp_mulmod(r, base, m, p);
    base = fp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

// Ben-Or: f of degree k is irreducible iff gcd(f, x^{p^i} - x) = 1, i <= k/2.
bool fp_irreducible(const FpPoly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  FpPoly h{0, 1};
  for (int i = 1; i <= k / 2; ++i) {
    h = fp_powmod(h, static_cast<std::uint64_t>(p), f, p);
    FpPoly t = h;
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] - 1 + p) % p;
    trim(t);
    if (fp_gcd(f, t, p).size() != 1) return false;
  }
  return true;
}

FpPoly least_irreducible(int p, int k) {
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FpPoly f(k + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < k; ++i) {
      f[i] = static_cast<int>(v % p);
      v /= p;
    }
    f[k] = 1;
    if (fp_irreducible(f, p)) return f;
  }
  throw FieldError("no irreducible found");  // unreachable
}

}  // namespace

Field::Field(int p, int k) : p_(p), k_(k) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  }
  if (k < 1) throw FieldError("extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxFieldSize) throw FieldError("field size exceeds cap");
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = k == 1 ? FpPoly{0, 1} : least_irreducible(p, k);

  auto to_poly = [&](Elem a) {
    FpPoly d(k, 0);
    for (int i = 0; i < k; ++i) {
      d[i] = static_cast<int>(a % p);
      a /= p;
    }
    trim(d);
    return d;
  };
  auto from_poly = [&](const FpPoly& d) {
    Elem a = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };
  auto slow_mul = [&](Elem a, Elem b) -> Elem {
    if (k == 1) return static_cast<Elem>(1ULL * a * b % p);
    return from_poly(fp_mulmod(to_poly(a), to_poly(b), modulus_, p));
  };
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return r;
  };

  const std::uint64_t n = q - 1;
  const auto factors = prime_factors(n);
  Elem g = 1;
  for (Elem cand = 1; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors) primitive = primitive && slow_pow(cand, n / r) != 1;
    if (primitive) {
      g = cand;
      break;
    }
  }

  exp_.assign(2 * n, 0);
  log_.assign(q_, 0);
  // Multiplication by g is linear over F_p: tabulate it on the digit basis.
  std::vector<Elem> g_times_basis(k);
  Elem basis = 1;
  for (int i = 0; i < k; ++i, basis *= p) g_times_basis[i] = slow_mul(g, basis);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = exp_[i + n] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    if (k == 1) {
      cur = static_cast<Elem>(1ULL * cur * g % p);
      continue;
    }
    Elem next = 0, v = cur;
    for (int j = 0; j < k && v; ++j, v /= p) {
      const int d = static_cast<int>(v % p);
      if (p == 2) {
        if (d) next ^= g_times_basis[j];
      } else {
        for (int t = 0; t < d; ++t) next = add_digits(next, g_times_basis[j]);
      }
    }
    cur = next;
  }
  if (cur != 1) throw FieldError("log table construction failed");

  if (p != 2) {
    neg_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
      auto d = digits(a);
      for (auto& x : d) x = (p - x) % p;
      neg_[a] = from_digits(d);
    }
    if (k > 1 && q_ <= 2048) {
      add_table_.assign(static_cast<std::size_t>(q_) * q_ + 2, 0);
      for (Elem a = 0; a < q_; ++a) {
        for (Elem b = 0; b < q_; ++b) {
          add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
        }
      }
    } else if (k > 1) {
      zech_.assign(n, kNoLog);
      for (std::uint64_t i = 0; i < n; ++i) {
        const Elem s = add_digits(1, exp_[i]);
        if (s) zech_[i] = log_[s];
      }
    }
  }
}

Elem Field::add_digits(Elem a, Elem b) const {
  Elem r = 0, place = 1;
  const Elem p = static_cast<Elem>(p_);
  while (a || b) {
    Elem d = a % p + b % p;
    if (d >= p) d -= p;
    r += d * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = q_ - 1;
  return exp_[static_cast<std::uint64_t>(log_[a]) * (e % n) % n];
}

Elem Field::from_int(long long n) const {
  const long long p = p_;
  return static_cast<Elem>(((n % p) + p) % p);
}

std::vector<int> Field::digits(Elem a) const {
  std::vector<int> d(k_, 0);
  for (int i = 0; i < k_; ++i) {
    d[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const int> d) const {
  if (static_cast<int>(d.size()) > k_) throw FieldError("too many digits");
  Elem a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
    if (d[i] < 0 || d[i] >= p_) throw FieldError("digit out of range");
    a = a * p_ + d[i];
  }
  return a;
}

const Field& field(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) {
    try {
      slot = std::make_unique<Field>(p, k);
    } catch (...) {
      cache.erase({p, k});
      throw;
    }
  }
  return *slot;
}

Embedding::Embedding(const Field& src, const Field& dst) : src_(&src), dst_(&dst) {
  if (src.p() != dst.p() || dst.k() % src.k() != 0) {
    throw FieldError("no embedding between these fields");
  }
  const auto& m = src.modulus();
  auto eval_mod = [&](Elem r) {
    Elem v = 0;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i) v = dst.add(dst.mul(v, r), static_cast<Elem>(m[i]));
    return v;
  };
  bool found = false;
  for (Elem r = 0; r < dst.size(); ++r) {
    if (eval_mod(r) == 0) {
      root_ = r;
      found = true;
      break;
    }
  }
  if (!found) throw FieldError("modulus has no root in destination");
  table_.resize(src.size());
  for (Elem a = 0; a < src.size(); ++a) {
    const auto d = src.digits(a);
    Elem v = 0;
    for (int i = src.k() - 1; i >= 0; --i) v = dst.add(dst.mul(v, root_), static_cast<Elem>(d[i]));
    table_[a] = v;
  }
}

Embedding embed(const Field& src, const Field& dst) { return Embedding(src, dst); }

UniPoly::UniPoly(const Field& f, std::vector<Elem> coeffs) : f_(&f), c_(std::move(coeffs)) {
  for (Elem c : c_) f.check(c);
  strip();
}

void UniPoly::strip() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(const Field& f, int degree, Elem c) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return UniPoly(f, std::move(v));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(*f_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(*f_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(*f_);
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_->add(r[i + j], f_->mul(c_[i], o.c_[j]));
  }
  return UniPoly(*f_, std::move(r));
}

UniPoly UniPoly::scaled(Elem c) const {
  std::vector<Elem> r(c_);
  for (auto& x : r) x = f_->mul(x, c);
  return UniPoly(*f_, std::move(r));
}

UniPoly UniPoly::monic() const { return is_zero() ? *this : scaled(f_->inv(leading())); }

UniPoly UniPoly::derivative() const {
  std::vector<Elem> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]));
  return UniPoly(*f_, std::move(r));
}

Elem UniPoly::eval(Elem at) const {
  Elem v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = f_->add(f_->mul(v, at), *it);
  return v;
}

UniPoly UniPoly::mapped(const Embedding& e) const {
  if (&e.src() != f_) throw FieldError("embedding source differs from coefficient field");
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = e(c_[i]);
  return UniPoly(e.dst(), std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw FieldError("polynomial division by zero");
  if (d.f_ != f_) throw FieldError("polynomials over different fields");
  std::vector<Elem> r = c_;
  const int dd = d.degree();
  if (degree() < dd) return {UniPoly(*f_), *this};
  std::vector<Elem> q(degree() - dd + 1, 0);
  const Elem lc_inv = f_->inv(d.leading());
  for (int i = degree(); i >= dd; --i) {
    const Elem c = f_->mul(r[i], lc_inv);
    q[i - dd] = c;
    if (!c) continue;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] = f_->sub(r[i - dd + j], f_->mul(c, d.c_[j]));
  }
  r.resize(dd);
  return {UniPoly(*f_, std::move(q)), UniPoly(*f_, std::move(r))};
}

std::string UniPoly::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s + "]";
}

UniPoly UniPoly::parse(const Field& f, std::string_view text) {
  auto strip_ws = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = strip_ws(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw FieldError("polynomial literal must look like [e0,e1,...]");
  }
  text = strip_ws(text.substr(1, text.size() - 2));
  std::vector<Elem> c;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto tok = strip_ws(text.substr(0, comma));
    Elem v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
      throw FieldError("bad coefficient '" + std::string(tok) + "'");
    }
    if (v >= f.size()) throw FieldError("coefficient " + std::string(tok) + " out of field range");
    c.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (strip_ws(text).empty()) throw FieldError("trailing comma in polynomial literal");
  }
  return UniPoly(f, std::move(c));
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& mod) {
  UniPoly r = UniPoly::constant(base.field(), 1) % mod;
  UniPoly b = base % mod;
  while (e) {
    if (e & 1) r = (r * b) % mod;
    e >>= 1;
    if (e) b = (b * b) % mod;
  }
  return r;
}

bool is_irreducible(const UniPoly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  const auto& F = f.field();
  const UniPoly x = UniPoly::x(F);
  UniPoly h = x % f;
  for (int i = 1; i <= n / 2; ++i) {
    h = powmod(h, F.size(), f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

namespace {

// g monic, squarefree, product of distinct linear factors.
void split_linear(const UniPoly& g, std::vector<Elem>& out) {
  const auto& F = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(g.coeff(0)));
    return;
  }
  const UniPoly x = UniPoly::x(F);
  for (Elem a = F.p() == 2 ? 1 : 0; a < F.size(); ++a) {
    UniPoly h(F);
    if (F.p() == 2) {
      // Trace of a*x from F_q down to F_2.
      UniPoly t = x.scaled(a) % g;
      h = t;
      for (int i = 1; i < F.k(); ++i) {
        t = (t * t) % g;
        h = h + t;
      }
    } else {
      h = powmod(x + UniPoly::constant(F, a), (F.size() - 1) / 2, g) - UniPoly::constant(F, 1);
    }
    const UniPoly d = gcd(g, h);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      split_linear(d, out);
      split_linear(g.divmod(d).first.monic(), out);
      return;
    }
  }
  throw FieldError("root splitting failed");  // unreachable for valid input
}

}  // namespace

std::vector<Elem> roots(const UniPoly& f) {
  if (f.is_zero()) throw FieldError("roots of the zero polynomial");
  const auto& F = f.field();
  std::vector<Elem> out;
  if (f.degree() == 0) return out;
  if (F.size() <= 64) {
    for (Elem a = 0; a < F.size(); ++a) {
      if (f.eval(a) == 0) out.push_back(a);
    }
    return out;
  }
  const UniPoly m = f.monic();
  const UniPoly x = UniPoly::x(F);
  const UniPoly g = gcd(m, powmod(x, F.size(), m) - x);
  split_linear(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<UniPoly> monic_irreducibles(const Field& f, int s, std::uint64_t cap) {
  if (s < 1) throw FieldError("place degree must be positive");
  std::uint64_t count = 1;
  for (int i = 0; i < s; ++i) {
    count *= f.size();
    if (count > cap) throw FieldError("monic_irreducibles: q^s exceeds cap");
  }
  std::vector<UniPoly> out;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> c(s + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < s; ++i) {
      c[i] = static_cast<Elem>(v % f.size());
      v /= f.size();
    }
    c[s] = 1;
    UniPoly p(f, std::move(c));
    if (is_irreducible(p)) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace delpezzo
