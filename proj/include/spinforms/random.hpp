#pragma once

#include <cstdint>
#include <random>

#include "form.hpp"

namespace spinforms {

/// Seeded source of random scalars, vectors and forms. Exact mode draws p/q
/// with |p| <= 1000 and 1 <= q <= 1000; float mode draws standard normals.
/// The draw order is fixed, so a seed determines every input.
template <FieldScalar S> class Sampler {
public:
  static constexpr long kBound = 1000;

  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  S scalar() {
    if constexpr (is_exact_v<S>) {
      std::uniform_int_distribution<long> num(-kBound, kBound), den(1, kBound);
      const long p = num(rng_);
      const long q = den(rng_);
      S r(p, q);
      r.canonicalize();
      return r;
    } else {
      return normal_(rng_);
    }
  }

  /// Small integers in [lo, hi]; used where a structured input needs them.
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Vector<S> vector(int dim) {
    Vector<S> v(dim);
    for (int i = 0; i < dim; ++i) v[i] = scalar();
    return v;
  }

  Form<S> form(int dim, int grade) {
    Form<S> f(dim, grade);
    for (int r = 0; r < f.size(); ++r) f[r] = scalar();
    return f;
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace spinforms
