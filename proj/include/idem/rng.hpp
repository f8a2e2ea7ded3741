#pragma once

#include <cstdint>
#include <random>

#include "idem/semiring.hpp"

namespace idem {

// Deterministic random source for property scans. mt19937_64 with explicit
// derivations only, so a fixed seed yields identical streams everywhere
// (the std distribution objects are not portable and are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }

  long int_in(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  // Integer-valued scalar so that sums stay exact in double arithmetic;
  // roughly one in six draws is the additive zero.
  Value value_in(const Semiring& sr) {
    switch (sr.kind()) {
      case SemiringKind::rmax:
      case SemiringKind::rmax_top:
        if (below(6) == 0) return Value::neg_inf();
        return Value::real(static_cast<double>(int_in(-8, 8)));
      case SemiringKind::rmin:
        if (below(6) == 0) return Value::pos_inf();
        return Value::real(static_cast<double>(int_in(-8, 8)));
      default:
        return Value::finite(below(sr.carrier_size()));
    }
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace idem
