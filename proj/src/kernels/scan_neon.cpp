#if defined(__aarch64__)

#include <arm_neon.h>

#include "delpezzo/kernels.hpp"

namespace delpezzo::kernels {

namespace {

// NEON has no gathers, so only the prime-field kernel is vectorized.
std::uint32_t scan_prime(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  const std::uint32_t q = t.q;
  const uint32x4_t va = vdupq_n_u32(c.a), vb = vdupq_n_u32(c.b), vc = vdupq_n_u32(c.c);
  const uint32x4_t vd = vdupq_n_u32(c.d), pinv = vdupq_n_u32(t.pinv), bound = vdupq_n_u32(t.bound);
  const uint32x4_t step = vdupq_n_u32(4);
  const std::uint32_t init[4] = {1, 2, 3, 4};
  uint32x4_t vz = vld1q_u32(init);
  std::uint32_t count = 0, z = 1;
  for (; z + 4 <= q; z += 4) {
    uint32x4_t v = vmlaq_u32(vd, vc, vz);
    v = vmlaq_u32(v, vb, vld1q_u32(t.z2.data() + z));
    v = vmlaq_u32(v, va, vld1q_u32(t.z3.data() + z));
    const uint32x4_t le = vcleq_u32(vmulq_u32(v, pinv), bound);
    std::uint32_t lanes[4];
    vst1q_u32(lanes, le);
    for (int i = 0; i < 4; ++i) {
      if (lanes[i]) {
        ++count;
        if (out) out->push_back(z + i);
      }
    }
    vz = vaddq_u32(vz, step);
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

}  // namespace

std::uint32_t scan_neon(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  if (t.kind == TableKind::Prime) return scan_prime(t, c, out);
  return scan_scalar(t, c, out);
}

}  // namespace delpezzo::kernels

#endif
