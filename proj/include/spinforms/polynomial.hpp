#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace spinforms {

inline constexpr int kMaxVars = 4;
inline constexpr int kDegreeCap = 6;

/// Multivariate polynomial in at most four variables (the base coordinates).
/// Also satisfies `Scalar`, so `Form<Polynomial<S>>` gives symbolic forms.
template <FieldScalar S> class Polynomial {
public:
  using Exponent = std::array<std::uint8_t, kMaxVars>;

  Polynomial() = default;
  template <std::integral I> Polynomial(I c) : Polynomial(S(static_cast<long>(c))) {}
  explicit Polynomial(const S &c) {
    if (!spinforms::is_zero(c)) terms_[Exponent{}] = c;
  }

  /// coef * x_0^e0 x_1^e1 ...
  static Polynomial monomial(const S &coef, std::span<const int> exponents) {
    require(exponents.size() <= kMaxVars, "polynomial: too many variables");
    Exponent e{};
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      require(exponents[i] >= 0 && exponents[i] <= 255, "polynomial: exponent out of range");
      e[i] = static_cast<std::uint8_t>(exponents[i]);
    }
    Polynomial p;
    if (!spinforms::is_zero(coef)) p.terms_[e] = coef;
    return p;
  }

  static Polynomial variable(int index) {
    require(index >= 0 && index < kMaxVars, "polynomial: variable out of range");
    Exponent e{};
    e[index] = 1;
    Polynomial p;
    p.terms_[e] = S(1);
    return p;
  }

  [[nodiscard]] const std::map<Exponent, S> &terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] int degree() const {
    int d = 0;
    for (const auto &[e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  /// Highest variable index that occurs, plus one.
  [[nodiscard]] int variables_used() const {
    int n = 0;
    for (const auto &[e, c] : terms_)
      for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > 0) n = std::max(n, i + 1);
    return n;
  }

  [[nodiscard]] Polynomial derivative(int index) const {
    require(index >= 0 && index < kMaxVars, "polynomial: variable out of range");
    Polynomial out;
    for (const auto &[e, c] : terms_) {
      if (e[index] == 0) continue;
      Exponent d = e;
      --d[index];
      out.add(d, S(c * S(static_cast<long>(e[index]))));
    }
    return out;
  }

  [[nodiscard]] S operator()(std::span<const S> x) const {
    S acc(0);
    for (const auto &[e, c] : terms_) {
      S t = c;
      for (int i = 0; i < kMaxVars; ++i) {
        if (e[i] == 0) continue;
        require(i < static_cast<int>(x.size()), "polynomial: point has too few coordinates");
        for (int k = 0; k < e[i]; ++k) t = t * x[i];
      }
      acc = acc + t;
    }
    return acc;
  }

  Polynomial &operator+=(const Polynomial &o) {
    for (const auto &[e, c] : o.terms_) add(e, c);
    return *this;
  }
  Polynomial &operator-=(const Polynomial &o) {
    for (const auto &[e, c] : o.terms_) add(e, S(-c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto &[e, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    Polynomial out;
    for (const auto &[ea, ca] : a.terms_)
      for (const auto &[eb, cb] : b.terms_) {
        Exponent e{};
        for (int i = 0; i < kMaxVars; ++i) {
          require(ea[i] + eb[i] <= 255, "polynomial: exponent overflow");
          e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        }
        out.add(e, S(ca * cb));
      }
    return out;
  }
  friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.terms_ == b.terms_; }

  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto &[e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += ScalarTraits<S>::to_string(c);
      for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > 0) s += " t" + std::to_string(i) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return s;
  }

private:
  void add(const Exponent &e, const S &c) {
    if (spinforms::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (spinforms::is_zero(it->second)) terms_.erase(it);
  }

  std::map<Exponent, S> terms_;
};

template <FieldScalar S> struct ScalarTraits<Polynomial<S>> {
  static constexpr bool exact = ScalarTraits<S>::exact;
  static constexpr const char *name = "polynomial";
  static bool is_zero(const Polynomial<S> &p) { return p.is_zero(); }
  static double magnitude(const Polynomial<S> &p) {
    double m = 0;
    for (const auto &[e, c] : p.terms()) m = std::max(m, ScalarTraits<S>::magnitude(c));
    return m;
  }
  static std::string to_string(const Polynomial<S> &p) { return "(" + p.to_string() + ")"; }
};

} // namespace spinforms
