#pragma once

// Root scanning of one-variable cubics a z^3 + b z^2 + c z + d over a finite
// field: the inner loop of point counting and line search. Each instruction
// set gets its own kernel over shared per-field tables; the scalar kernel is
// the reference, vector kernels must agree with it bit for bit.

#include <cstdint>
#include <memory>
#include <vector>

#include "delpezzo/gf.hpp"

namespace delpezzo::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);
// Best kernel family supported by the running CPU.
Isa best_isa();
// Families that can run here, scalar first.
std::vector<Isa> available_isas();

enum class TableKind {
  Prime,     // k = 1, odd p < 2^15: reduced powers of z, divisibility by p
  Binary,    // p = 2: log/exp terms, XOR sums
  OddSmall,  // odd p, k > 1, q <= 2048: log/exp terms, tabulated sums
  Generic,   // anything else: field operations
};

struct ScanTables {
  const Field* field = nullptr;
  TableKind kind = TableKind::Generic;
  std::uint32_t q = 0;
  // Prime: z^2 and z^3 mod p; pinv * p = 1 mod 2^32, bound = (2^32 - 1) / p.
  std::vector<std::uint32_t> z2, z3;
  std::uint32_t pinv = 0, bound = 0;
  // Binary / OddSmall: i * log z mod (q - 1) for i = 1, 2, 3; entry 0 unused.
  std::vector<std::uint32_t> l1, l2, l3;
};

// Shared tables for f, built once per field; thread-safe.
std::shared_ptr<const ScanTables> scan_tables(const Field& f);

struct Cubic {
  Elem a, b, c, d;
};

// Kernels cover z in [1, q); z = 0 is the caller's. When out is non-null the
// roots are appended in ascending order. Return the number of roots found.
using ScanFn = std::uint32_t (*)(const ScanTables&, const Cubic&, std::vector<Elem>* out);

std::uint32_t scan_scalar(const ScanTables& t, const Cubic& f, std::vector<Elem>* out);
#if defined(__x86_64__) || defined(__i386__)
std::uint32_t scan_avx2(const ScanTables& t, const Cubic& f, std::vector<Elem>* out);
// The AVX2 family defers OddSmall tables to scalar unless this is set (tests).
extern bool force_odd_small_gather;
#endif
#if defined(__aarch64__)
std::uint32_t scan_neon(const ScanTables& t, const Cubic& f, std::vector<Elem>* out);
#endif

ScanFn scan_function(Isa isa);

class CubicRootScanner {
 public:
  explicit CubicRootScanner(const Field& f, Isa isa = best_isa());

  const Field& field() const { return *tables_->field; }
  Isa isa() const { return isa_; }

  // Number of z in F with a z^3 + b z^2 + c z + d = 0 (q when all vanish).
  std::uint32_t count(Elem a, Elem b, Elem c, Elem d) const {
    const Cubic f{a, b, c, d};
    return (d == 0 ? 1u : 0u) + fn_(*tables_, f, nullptr);
  }
  // Appends the roots in ascending order.
  void collect(Elem a, Elem b, Elem c, Elem d, std::vector<Elem>& out) const {
    if (d == 0) out.push_back(0);
    const Cubic f{a, b, c, d};
    fn_(*tables_, f, &out);
  }

 private:
  std::shared_ptr<const ScanTables> tables_;
  Isa isa_;
  ScanFn fn_;
};

}  // namespace delpezzo::kernels
