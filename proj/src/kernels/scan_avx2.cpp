#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <bit>

#include "delpezzo/kernels.hpp"

namespace delpezzo::kernels {

namespace {

#define DP_AVX2 __attribute__((target("avx2,popcnt")))

DP_AVX2 inline std::uint32_t emit(unsigned mask, std::uint32_t z0, std::vector<Elem>* out) {
  if (out) {
    for (unsigned m = mask; m; m &= m - 1) out->push_back(z0 + static_cast<std::uint32_t>(std::countr_zero(m)));
  }
  return static_cast<std::uint32_t>(std::popcount(mask));
}

DP_AVX2 inline unsigned lanes(__m256i eq) {
  return static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
}

DP_AVX2 std::uint32_t scan_prime(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  const std::uint32_t q = t.q;
  const __m256i va = _mm256_set1_epi32(static_cast<int>(c.a));
  const __m256i vb = _mm256_set1_epi32(static_cast<int>(c.b));
  const __m256i vc = _mm256_set1_epi32(static_cast<int>(c.c));
  const __m256i vd = _mm256_set1_epi32(static_cast<int>(c.d));
  const __m256i pinv = _mm256_set1_epi32(static_cast<int>(t.pinv));
  const __m256i bound = _mm256_set1_epi32(static_cast<int>(t.bound));
  const __m256i step = _mm256_set1_epi32(8);
  __m256i vz = _mm256_setr_epi32(1, 2, 3, 4, 5, 6, 7, 8);
  std::uint32_t count = 0, z = 1;
  for (; z + 8 <= q; z += 8) {
    const __m256i z3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t.z3.data() + z));
    const __m256i z2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t.z2.data() + z));
    __m256i v = _mm256_add_epi32(_mm256_mullo_epi32(va, z3), _mm256_mullo_epi32(vb, z2));
    v = _mm256_add_epi32(v, _mm256_add_epi32(_mm256_mullo_epi32(vc, vz), vd));
    const __m256i w = _mm256_mullo_epi32(v, pinv);
    const __m256i le = _mm256_cmpeq_epi32(_mm256_min_epu32(w, bound), w);
    count += emit(lanes(le), z, out);
    vz = _mm256_add_epi32(vz, step);
  }
  for (; z < q; ++z) {
    const std::uint32_t v = c.a * t.z3[z] + c.b * t.z2[z] + c.c * z + c.d;
    if (v * t.pinv <= t.bound) {
      ++count;
      if (out) out->push_back(z);
    }
  }
  return count;
}

// Terms m & exp[l + L[z]] for the three monomials, eight lanes at a time.
struct LogTerms {
  __m256i la, lb, lc, ma, mb, mc;
};

DP_AVX2 inline void terms(const ScanTables& t, const int* exp, const LogTerms& k, std::uint32_t z, __m256i& t3,
                          __m256i& t2, __m256i& t1) {
  const __m256i l3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t.l3.data() + z));
  const __m256i l2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t.l2.data() + z));
  const __m256i l1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t.l1.data() + z));
  t3 = _mm256_and_si256(_mm256_i32gather_epi32(exp, _mm256_add_epi32(k.la, l3), 4), k.ma);
  t2 = _mm256_and_si256(_mm256_i32gather_epi32(exp, _mm256_add_epi32(k.lb, l2), 4), k.mb);
  t1 = _mm256_and_si256(_mm256_i32gather_epi32(exp, _mm256_add_epi32(k.lc, l1), 4), k.mc);
}

DP_AVX2 std::uint32_t scan_log(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  const Field& f = *t.field;
  const std::uint32_t q = t.q;
  const auto& exp_tab = f.exp_table();
  const int* exp = reinterpret_cast<const int*>(exp_tab.data());
  const std::uint32_t la = c.a ? f.log(c.a) : 0, lb = c.b ? f.log(c.b) : 0, lc = c.c ? f.log(c.c) : 0;
  const std::uint32_t ma = c.a ? ~0u : 0u, mb = c.b ? ~0u : 0u, mc = c.c ? ~0u : 0u;
  const LogTerms k{_mm256_set1_epi32(static_cast<int>(la)), _mm256_set1_epi32(static_cast<int>(lb)),
                   _mm256_set1_epi32(static_cast<int>(lc)), _mm256_set1_epi32(static_cast<int>(ma)),
                   _mm256_set1_epi32(static_cast<int>(mb)), _mm256_set1_epi32(static_cast<int>(mc))};
  const bool binary = t.kind == TableKind::Binary;
  const std::uint32_t target = binary ? c.d : f.neg(c.d);
  const __m256i vtarget = _mm256_set1_epi32(static_cast<int>(target));
  const auto& add_tab = f.add_table();
  // 32-bit gathers over the 16-bit table; the table is padded for the overread.
  const int* add = reinterpret_cast<const int*>(add_tab.data());
  const __m256i vq = _mm256_set1_epi32(static_cast<int>(q));
  const __m256i low16 = _mm256_set1_epi32(0xFFFF);
  std::uint32_t count = 0, z = 1;
  for (; z + 8 <= q; z += 8) {
    __m256i t3, t2, t1;
    terms(t, exp, k, z, t3, t2, t1);
    __m256i s;
    if (binary) {
      s = _mm256_xor_si256(_mm256_xor_si256(t3, t2), t1);
    } else {
      s = _mm256_i32gather_epi32(add, _mm256_add_epi32(_mm256_mullo_epi32(t3, vq), t2), 2);
      s = _mm256_and_si256(s, low16);
      s = _mm256_i32gather_epi32(add, _mm256_add_epi32(_mm256_mullo_epi32(s, vq), t1), 2);
      s = _mm256_and_si256(s, low16);
    }
    count += emit(lanes(_mm256_cmpeq_epi32(s, vtarget)), z, out);
  }
  for (; z < q; ++z) {
    const std::uint32_t t3 = exp_tab[la + t.l3[z]] & ma, t2 = exp_tab[lb + t.l2[z]] & mb;
    const std::uint32_t t1 = exp_tab[lc + t.l1[z]] & mc;
    const std::uint32_t s =
        binary ? (t3 ^ t2 ^ t1) : add_tab[static_cast<std::size_t>(add_tab[static_cast<std::size_t>(t3) * q + t2]) * q + t1];
    if (s == target) {
      ++count;
      if (out) out->push_back(z);
    }
  }
  return count;
}

}  // namespace

bool force_odd_small_gather = false;

std::uint32_t scan_avx2(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  switch (t.kind) {
    case TableKind::Prime:
      return scan_prime(t, c, out);
    case TableKind::Binary:
      return scan_log(t, c, out);
    case TableKind::OddSmall:
      // Measured slower than scalar: the sum-table gathers miss cache.
      if (force_odd_small_gather) return scan_log(t, c, out);
      break;
    case TableKind::Generic:
      break;
  }
  return scan_scalar(t, c, out);
}

}  // namespace delpezzo::kernels

#endif
