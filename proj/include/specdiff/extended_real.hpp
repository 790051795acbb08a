#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace specdiff {

enum class ERTag { finite, pos_inf, neg_inf };

// A finite double or a signed infinity. One-sided derivatives live here.
// NaN is never stored; the factory rejects it.
struct ExtendedReal {
  ERTag tag = ERTag::finite;
  double value = 0.0;  // meaningful only when tag == finite

  static ExtendedReal finite(double v) {
    if (!std::isfinite(v))
      throw std::invalid_argument("ExtendedReal::finite: value is not finite");
    ExtendedReal r;
    r.tag = ERTag::finite;
    r.value = v;
    return r;
  }
  static ExtendedReal pos_inf() {
    ExtendedReal r;
    r.tag = ERTag::pos_inf;
    return r;
  }
  static ExtendedReal neg_inf() {
    ExtendedReal r;
    r.tag = ERTag::neg_inf;
    return r;
  }

  bool is_finite() const { return tag == ERTag::finite; }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.tag != b.tag) return false;
    return a.tag != ERTag::finite || a.value == b.value;
  }
};

inline std::string to_string(const ExtendedReal& x) {
  switch (x.tag) {
    case ERTag::pos_inf: return "+inf";
    case ERTag::neg_inf: return "-inf";
    default: return std::to_string(x.value);
  }
}

}  // namespace specdiff
