#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinforms {

/// Exact scalar: arbitrary-precision rationals.
using Rational = mpq_class;

/// Thrown when a caller breaks an operation's precondition (dimension or grade
/// mismatch, wrong support, unsupported degree). These are programming errors.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Thrown for well-formed input that is geometrically unusable (singular map,
/// non-calibrated plane, point outside a domain).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const char *what) {
  if (!ok) throw ContractViolation(what);
}

/// Relative tolerance used for float-mode comparisons, measured against the
/// largest input magnitude, with an absolute floor.
struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;

  [[nodiscard]] double bound(double scale) const {
    return std::max(absolute, relative * scale);
  }
};

template <class S> struct ScalarTraits;

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char *name = "float";
  static bool is_zero(double v) { return v == 0.0; }
  static double to_double(double v) { return v; }
  static double magnitude(double v) { return std::abs(v); }
  static std::string to_string(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char *name = "exact";
  static bool is_zero(const Rational &v) { return sgn(v) == 0; }
  static double to_double(const Rational &v) { return v.get_d(); }
  static double magnitude(const Rational &v) { return std::abs(v.get_d()); }
  static std::string to_string(const Rational &v) { return v.get_str(); }
};

/// Scalars usable as form coefficients: a commutative ring with zero test.
template <class S>
concept Scalar = requires(S a, S b) {
  { S(0) };
  { S(a + b) };
  { S(a - b) };
  { S(a * b) };
  { S(-a) };
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
};

/// Scalars that also divide (rationals and doubles).
template <class S>
concept FieldScalar = Scalar<S> && requires(S a, S b) {
  { S(a / b) };
  { ScalarTraits<S>::to_double(a) } -> std::convertible_to<double>;
};

template <class S> inline bool is_zero(const S &v) {
  return ScalarTraits<S>::is_zero(v);
}

template <class S> inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// Parses "p/q" or "p" into a canonical rational; rejects zero denominators.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (sgn(r.get_den()) == 0)
    throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

/// Converts an integer into any supported scalar.
template <class S> inline S from_int(long v) { return S(v); }

template <class S> inline S from_fraction(long num, long den) {
  if constexpr (is_exact_v<S>) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

/// Zero/nonzero classification of a residual. Float values between the two
/// bands are reported as indeterminate instead of being forced either way.
enum class Status { zero, nonzero, indeterminate };

inline const char *to_string(Status s) {
  switch (s) {
  case Status::zero: return "zero";
  case Status::nonzero: return "nonzero";
  default: return "indeterminate";
  }
}

struct StatusBands {
  double zero = 1e-9;
  double nonzero = 1e-6;
};

/// Classifies a float norm measured against an input scale.
inline Status classify_norm(double norm, double scale, StatusBands bands = {}) {
  const double zero_bound = bands.zero * (1.0 + scale);
  if (norm <= zero_bound) return Status::zero;
  if (norm > std::max(bands.nonzero, zero_bound)) return Status::nonzero;
  return Status::indeterminate;
}

/// Classifies a squared norm; exact scalars are decided without rounding.
template <class S> Status classify_norm_sq(const S &norm_sq, double scale, StatusBands bands = {}) {
  if constexpr (ScalarTraits<S>::exact) {
    return ScalarTraits<S>::is_zero(norm_sq) ? Status::zero : Status::nonzero;
  } else {
    return classify_norm(std::sqrt(std::max(0.0, ScalarTraits<S>::to_double(norm_sq))), scale, bands);
  }
}

} // namespace spinforms
