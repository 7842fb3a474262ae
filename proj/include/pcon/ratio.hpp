#pragma once
// Exact nonnegative rationals for cut-quality comparisons.
//
// Every quantity we compare (cut size, volume) is bounded by the graph volume
// 2m <= 2^63, so cross products fit comfortably in 128 bits and every
// argmin/argmax decision is made in integer arithmetic — floating point is
// only used for display.

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace pcon {

struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

inline void require_valid(Ratio r) {
  if (r.den == 0) throw std::invalid_argument("ratio with zero denominator");
}

inline bool ratio_less(Ratio a, Ratio b) {
  require_valid(a);
  require_valid(b);
  return static_cast<unsigned __int128>(a.num) * b.den <
         static_cast<unsigned __int128>(b.num) * a.den;
}

inline bool ratio_eq(Ratio a, Ratio b) {
  return !ratio_less(a, b) && !ratio_less(b, a);
}

// gcd-normalized copy; used for display and equality of frozen values.
inline Ratio reduced(Ratio r) {
  require_valid(r);
  if (r.num == 0) return {0, 1};
  std::uint64_t g = std::gcd(r.num, r.den);
  return {r.num / g, r.den / g};
}

inline double to_double(Ratio r) {
  require_valid(r);
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

}  // namespace pcon
