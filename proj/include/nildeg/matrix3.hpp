#pragma once

// 3x3 matrices over any commutative ring type R with +, -, * and is_zero().

#include <array>
#include <cstddef>
#include <string>

namespace nildeg {

template <class R>
class Matrix3 {
 public:
  Matrix3() = default;
  explicit Matrix3(std::array<R, 9> rows) : e_(std::move(rows)) {}

  static Matrix3 filled(const R& x) {
    std::array<R, 9> a;
    a.fill(x);
    return Matrix3(a);
  }
  static Matrix3 identity(const R& zero, const R& one) {
    Matrix3 m = filled(zero);
    for (int i = 0; i < 3; ++i) m(i, i) = one;
    return m;
  }
  /// Columns are the images of e1, e2, e3.
  static Matrix3 from_columns(const std::array<R, 3>& c1, const std::array<R, 3>& c2, const std::array<R, 3>& c3) {
    Matrix3 m = filled(c1[0]);
    for (int i = 0; i < 3; ++i) {
      m(i, 0) = c1[i];
      m(i, 1) = c2[i];
      m(i, 2) = c3[i];
    }
    return m;
  }

  R& operator()(int i, int j) { return e_[static_cast<std::size_t>(3 * i + j)]; }
  const R& operator()(int i, int j) const { return e_[static_cast<std::size_t>(3 * i + j)]; }
  const std::array<R, 9>& entries() const { return e_; }

  R det() const {
    const auto& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }

  /// adj(m) with m * adj(m) = det(m) * I.
  Matrix3 adjugate() const {
    const auto& m = *this;
    Matrix3 a = *this;
    a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return a;
  }

  Matrix3 transpose() const {
    Matrix3 t = *this;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
    Matrix3 r = a;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        R acc = a(i, 0) * b(0, j);
        acc = acc + a(i, 1) * b(1, j);
        acc = acc + a(i, 2) * b(2, j);
        r(i, j) = acc;
      }
    }
    return r;
  }

  friend bool operator==(const Matrix3& a, const Matrix3& b) { return a.e_ == b.e_; }

  template <class F>
  auto map(F f) const {
    using S = decltype(f(e_[0]));
    std::array<S, 9> out;
    for (std::size_t i = 0; i < 9; ++i) out[i] = f(e_[i]);
    return Matrix3<S>(std::move(out));
  }

 private:
  std::array<R, 9> e_;
};

/// Flat index of the triple (i, j, k), 0-based, lexicographic.
constexpr std::size_t flat(int i, int j, int k) { return static_cast<std::size_t>(9 * i + 3 * j + k); }

/// out_abc = sum_{ijk} g_ia g_jb h_ck lam_ijk. With h = g^-1 this is the right
/// action by change of basis; with h = adj(g) it is det(g) times that.
template <class R>
std::array<R, 27> contract(const std::array<R, 27>& lam, const Matrix3<R>& g, const Matrix3<R>& h, const R& zero) {
  std::array<R, 27> t1, t2, out;
  t1.fill(zero);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const R& l = lam[flat(i, j, k)];
        if (l.is_zero()) continue;
        for (int c = 0; c < 3; ++c) {
          if (h(c, k).is_zero()) continue;
          t1[flat(i, j, c)] = t1[flat(i, j, c)] + h(c, k) * l;
        }
      }
  t2.fill(zero);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 3; ++c) {
        const R& x = t1[flat(i, j, c)];
        if (x.is_zero()) continue;
        for (int b = 0; b < 3; ++b) {
          if (g(j, b).is_zero()) continue;
          t2[flat(i, b, c)] = t2[flat(i, b, c)] + g(j, b) * x;
        }
      }
  out.fill(zero);
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const R& x = t2[flat(i, b, c)];
        if (x.is_zero()) continue;
        for (int a = 0; a < 3; ++a) {
          if (g(i, a).is_zero()) continue;
          out[flat(a, b, c)] = out[flat(a, b, c)] + g(i, a) * x;
        }
      }
  return out;
}

}  // namespace nildeg
