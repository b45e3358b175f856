#pragma once

#include <initializer_list>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "scalar.hpp"

namespace spinforms {

/// A vector of R^n in the standard orthonormal frame.
template <Scalar S> class Vector {
public:
  Vector() = default;
  explicit Vector(int dim) : c_(static_cast<std::size_t>(dim), S(0)) {
    require(dim >= 1 && dim <= kMaxDim, "vector: dimension out of range");
  }
  explicit Vector(std::vector<S> comps) : c_(std::move(comps)) {
    require(!c_.empty() && c_.size() <= kMaxDim, "vector: dimension out of range");
  }

  /// Standard basis vector e_label, using the dimension's label convention.
  static Vector basis(int dim, int label) {
    Vector v(dim);
    int p = label - label_base(dim);
    require(p >= 0 && p < dim, "vector: basis label out of range");
    v.c_[p] = S(1);
    return v;
  }

  [[nodiscard]] int dim() const { return static_cast<int>(c_.size()); }
  S &operator[](int i) { return c_[i]; }
  const S &operator[](int i) const { return c_[i]; }
  [[nodiscard]] const std::vector<S> &components() const { return c_; }

  Vector &operator+=(const Vector &o) {
    require(dim() == o.dim(), "vector: dimension mismatch");
    for (int i = 0; i < dim(); ++i) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  Vector &operator-=(const Vector &o) {
    require(dim() == o.dim(), "vector: dimension mismatch");
    for (int i = 0; i < dim(); ++i) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  Vector &operator*=(const S &s) {
    for (auto &x : c_) x = x * s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector &b) { return a += b; }
  friend Vector operator-(Vector a, const Vector &b) { return a -= b; }
  friend Vector operator*(const S &s, Vector a) { return a *= s; }

  friend S dot(const Vector &a, const Vector &b) {
    require(a.dim() == b.dim(), "vector: dimension mismatch");
    S acc(0);
    for (int i = 0; i < a.dim(); ++i) acc = acc + a.c_[i] * b.c_[i];
    return acc;
  }

  friend bool operator==(const Vector &a, const Vector &b) { return a.c_ == b.c_; }

private:
  std::vector<S> c_;
};

/// Dense square matrix, row-major. Acts on column vectors.
template <Scalar S> class Matrix {
public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), S(0)) {}

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  [[nodiscard]] int size() const { return n_; }
  S &operator()(int r, int c) { return a_[r * n_ + c]; }
  const S &operator()(int r, int c) const { return a_[r * n_ + c]; }

  Vector<S> operator*(const Vector<S> &v) const {
    require(v.dim() == n_, "matrix: dimension mismatch");
    Vector<S> out(n_);
    for (int r = 0; r < n_; ++r) {
      S acc(0);
      for (int c = 0; c < n_; ++c) acc = acc + (*this)(r, c) * v[c];
      out[r] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    require(a.n_ == b.n_, "matrix: dimension mismatch");
    Matrix out(a.n_);
    for (int r = 0; r < a.n_; ++r)
      for (int c = 0; c < a.n_; ++c) {
        S acc(0);
        for (int k = 0; k < a.n_; ++k) acc = acc + a(r, k) * b(k, c);
        out(r, c) = acc;
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) {
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] = a.a_[i] + b.a_[i];
    return a;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  [[nodiscard]] Vector<S> column(int c) const {
    Vector<S> v(n_);
    for (int r = 0; r < n_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

private:
  int n_ = 0;
  std::vector<S> a_;
};

/// A grade-homogeneous alternating form on R^n, n <= 8. Coefficients are kept
/// densely, one per increasing index tuple in lexicographic order.
template <Scalar S> class Form {
public:
  Form() = default;

  /// The zero form of the given dimension and grade.
  Form(int dim, int grade) : dim_(dim), grade_(grade) {
    require(dim >= 1 && dim <= kMaxDim, "form: dimension out of range");
    require(grade >= 0 && grade <= dim, "form: grade out of range");
    c_.assign(static_cast<std::size_t>(binomial(dim, grade)), S(0));
  }

  static Form scalar(int dim, const S &value) {
    Form f(dim, 0);
    f.c_[0] = value;
    return f;
  }

  /// coef * e^{l_1 ... l_k} from labels in the dimension's convention. The
  /// labels need not be sorted; the permutation sign is applied.
  static Form basis(int dim, std::initializer_list<int> labels, const S &coef = S(1)) {
    return basis(dim, std::vector<int>(labels), coef);
  }
  static Form basis(int dim, const std::vector<int> &labels, const S &coef = S(1)) {
    Form f(dim, static_cast<int>(labels.size()));
    std::vector<int> pos;
    Mask m = 0;
    for (int l : labels) {
      int p = l - label_base(dim);
      require(p >= 0 && p < dim, "form: index label out of range");
      if (m & (1u << p)) return f;
      m = static_cast<Mask>(m | (1u << p));
      pos.push_back(p);
    }
    int sign = permutation_sign(pos);
    f.c_[IndexTable::get(dim, f.grade_).rank(m)] = sign > 0 ? S(coef) : S(-coef);
    return f;
  }

  /// The volume form e^{1..n} (or e^{0..7}).
  static Form volume(int dim) {
    Form f(dim, dim);
    f.c_[0] = S(1);
    return f;
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int grade() const { return grade_; }
  [[nodiscard]] int size() const { return static_cast<int>(c_.size()); }
  [[nodiscard]] const IndexTable &table() const { return IndexTable::get(dim_, grade_); }

  S &operator[](int rank) { return c_[rank]; }
  const S &operator[](int rank) const { return c_[rank]; }
  [[nodiscard]] const std::vector<S> &coefficients() const { return c_; }

  /// Coefficient of e^{labels}, labels strictly increasing.
  [[nodiscard]] S coef(std::initializer_list<int> labels) const {
    require(static_cast<int>(labels.size()) == grade_, "form: grade mismatch in coef");
    Mask m = 0;
    int prev = -1;
    for (int l : labels) {
      int p = l - label_base(dim_);
      require(p > prev && p < dim_, "form: labels must be strictly increasing and in range");
      prev = p;
      m = static_cast<Mask>(m | (1u << p));
    }
    return c_[table().rank(m)];
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto &x : c_)
      if (!spinforms::is_zero(x)) return false;
    return true;
  }

  /// Largest coefficient magnitude, as a double.
  [[nodiscard]] double max_abs() const {
    double m = 0;
    for (const auto &x : c_) m = std::max(m, ScalarTraits<S>::magnitude(x));
    return m;
  }

  Form &operator+=(const Form &o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  Form &operator-=(const Form &o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  Form &operator*=(const S &s) {
    for (auto &x : c_) x = x * s;
    return *this;
  }
  friend Form operator+(Form a, const Form &b) { return a += b; }
  friend Form operator-(Form a, const Form &b) { return a -= b; }
  friend Form operator-(Form a) {
    for (auto &x : a.c_) x = -x;
    return a;
  }
  friend Form operator*(const S &s, Form a) { return a *= s; }
  friend Form operator*(Form a, const S &s) { return a *= s; }
  friend Form operator/(Form a, const S &s) {
    for (auto &x : a.c_) x = x / s;
    return a;
  }

  /// Equality ignores nothing but representation: dense storage makes
  /// explicit zeros and absent terms identical.
  friend bool operator==(const Form &a, const Form &b) {
    if (a.dim_ != b.dim_ || a.grade_ != b.grade_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!spinforms::is_zero(S(a.c_[i] - b.c_[i]))) return false;
    return true;
  }

  /// Human-readable sum of terms, e.g. "e^{23} - 1/2 e^{45}".
  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    const auto &t = table();
    for (int r = 0; r < size(); ++r) {
      if (spinforms::is_zero(c_[r])) continue;
      if (!first) os << " + ";
      first = false;
      os << ScalarTraits<S>::to_string(c_[r]) << " e^{";
      for (int p : mask_positions(t.mask(r))) os << (p + label_base(dim_));
      os << "}";
    }
    if (first) os << "0";
    return os.str();
  }

  friend std::ostream &operator<<(std::ostream &os, const Form &f) { return os << f.to_string(); }

private:
  void check_same(const Form &o) const {
    require(dim_ == o.dim_ && grade_ == o.grade_, "form: dimension or grade mismatch");
  }

  int dim_ = 0;
  int grade_ = 0;
  std::vector<S> c_;
};

} // namespace spinforms
