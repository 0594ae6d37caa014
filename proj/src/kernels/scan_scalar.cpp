#include <map>
#include <mutex>

#include "delpezzo/kernels.hpp"

namespace delpezzo::kernels {

namespace {

std::shared_ptr<ScanTables> build_tables(const Field& f) {
  auto t = std::make_shared<ScanTables>();
  t->field = &f;
  t->q = f.size();
  const std::uint32_t q = f.size();
  if (f.p() == 2) {
    t->kind = TableKind::Binary;
  } else if (f.k() == 1 && f.p() < (1 << 15)) {
    t->kind = TableKind::Prime;
  } else if (!f.add_table().empty()) {
    t->kind = TableKind::OddSmall;
  }
  if (t->kind == TableKind::Prime) {
    const std::uint64_t p = f.p();
    t->z2.resize(q);
    t->z3.resize(q);
    for (std::uint64_t z = 0; z < q; ++z) {
      t->z2[z] = static_cast<std::uint32_t>(z * z % p);
      t->z3[z] = static_cast<std::uint32_t>(z * z % p * z % p);
    }
    // Newton iteration for the inverse of odd p modulo 2^32.
    std::uint32_t inv = static_cast<std::uint32_t>(p);
    for (int i = 0; i < 5; ++i) inv *= 2 - static_cast<std::uint32_t>(p) * inv;
    t->pinv = inv;
    t->bound = 0xFFFFFFFFu / static_cast<std::uint32_t>(p);
  } else if (t->kind == TableKind::Binary || t->kind == TableKind::OddSmall) {
    const std::uint64_t n = q - 1;
    t->l1.assign(q, 0);
    t->l2.assign(q, 0);
    t->l3.assign(q, 0);
    for (std::uint32_t z = 1; z < q; ++z) {
      const std::uint64_t l = f.log(z);
      t->l1[z] = static_cast<std::uint32_t>(l);
      t->l2[z] = static_cast<std::uint32_t>(2 * l % n);
      t->l3[z] = static_cast<std::uint32_t>(3 * l % n);
    }
  }
  return t;
}

}  // namespace

std::shared_ptr<const ScanTables> scan_tables(const Field& f) {
  static std::mutex mu;
  static std::map<const Field*, std::shared_ptr<const ScanTables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[&f];
  if (!slot) slot = build_tables(f);
  return slot;
}

std::uint32_t scan_scalar(const ScanTables& t, const Cubic& c, std::vector<Elem>* out) {
  const Field& f = *t.field;
  const std::uint32_t q = t.q;
  std::uint32_t count = 0;
  auto hit = [&](std::uint32_t z) {
    ++count;
    if (out) out->push_back(z);
  };
  switch (t.kind) {
    case TableKind::Prime: {
      for (std::uint32_t z = 1; z < q; ++z) {
        const std::uint32_t v = c.a * t.z3[z] + c.b * t.z2[z] + c.c * z + c.d;
        if (v * t.pinv <= t.bound) hit(z);
      }
      break;
    }
    case TableKind::Binary:
    case TableKind::OddSmall: {
      const auto& exp = f.exp_table();
      const std::uint32_t la = c.a ? f.log(c.a) : 0, lb = c.b ? f.log(c.b) : 0, lc = c.c ? f.log(c.c) : 0;
      const std::uint32_t ma = c.a ? ~0u : 0u, mb = c.b ? ~0u : 0u, mc = c.c ? ~0u : 0u;
      if (t.kind == TableKind::Binary) {
        for (std::uint32_t z = 1; z < q; ++z) {
          const std::uint32_t s = (exp[la + t.l3[z]] & ma) ^ (exp[lb + t.l2[z]] & mb) ^ (exp[lc + t.l1[z]] & mc);
          if (s == c.d) hit(z);
        }
      } else {
        const auto& add = f.add_table();
        const std::uint32_t target = f.neg(c.d);
        for (std::uint32_t z = 1; z < q; ++z) {
          const std::uint32_t t3 = exp[la + t.l3[z]] & ma, t2 = exp[lb + t.l2[z]] & mb;
          const std::uint32_t t1 = exp[lc + t.l1[z]] & mc;
          const std::uint32_t s = add[static_cast<std::size_t>(add[static_cast<std::size_t>(t3) * q + t2]) * q + t1];
          if (s == target) hit(z);
        }
      }
      break;
    }
    case TableKind::Generic: {
      for (std::uint32_t z = 1; z < q; ++z) {
        const Elem v = f.add(f.mul(f.add(f.mul(f.add(f.mul(c.a, z), c.b), z), c.c), z), c.d);
        if (v == 0) hit(z);
      }
      break;
    }
  }
  return count;
}

}  // namespace delpezzo::kernels
