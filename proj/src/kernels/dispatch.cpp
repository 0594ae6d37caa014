#include <stdexcept>

#include "delpezzo/kernels.hpp"

namespace delpezzo::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) out.push_back(Isa::Avx2);
#endif
#if defined(__aarch64__)
  out.push_back(Isa::Neon);
#endif
  return out;
}

Isa best_isa() {
  static const Isa best = available_isas().back();
  return best;
}

ScanFn scan_function(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &scan_scalar;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      if (__builtin_cpu_supports("avx2")) return &scan_avx2;
#endif
      break;
    case Isa::Neon:
#if defined(__aarch64__)
      return &scan_neon;
#endif
      break;
  }
  throw std::invalid_argument(std::string("kernel family not available: ") + isa_name(isa));
}

CubicRootScanner::CubicRootScanner(const Field& f, Isa isa)
    : tables_(scan_tables(f)), isa_(isa), fn_(scan_function(isa)) {}

}  // namespace delpezzo::kernels
