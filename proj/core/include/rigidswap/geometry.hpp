#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <gmpxx.h>

namespace rigidswap {

/// Homogeneous point (x, y, z, w) of projective 3-space.
using Point4 = std::array<double, 4>;
using ExactPoint4 = std::array<mpq_class, 4>;

inline Point4 affine_point(double x, double y, double z) { return {x, y, z, 1.0}; }

ExactPoint4 to_exact(const Point4& p);

/// Nearest double coordinates of an exact point.
Point4 to_double(const ExactPoint4& p);

/// Six Plücker coordinates ordered (d14, d24, d34, d23, d31, d12).
///
/// Decomposable extensors (lines, bar loads, hinges) come from join(); sums of
/// them (screws, loads at a vertex) are general six-vectors.
template <class T>
struct BasicExtensor2 {
  std::array<T, 6> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  BasicExtensor2& operator+=(const BasicExtensor2& o) {
    for (std::size_t i = 0; i < 6; ++i) c[i] += o.c[i];
    return *this;
  }
  BasicExtensor2& operator-=(const BasicExtensor2& o) {
    for (std::size_t i = 0; i < 6; ++i) c[i] -= o.c[i];
    return *this;
  }
  BasicExtensor2& operator*=(const T& s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend BasicExtensor2 operator+(BasicExtensor2 a, const BasicExtensor2& b) { return a += b; }
  friend BasicExtensor2 operator-(BasicExtensor2 a, const BasicExtensor2& b) { return a -= b; }
  friend BasicExtensor2 operator*(const T& s, BasicExtensor2 a) { return a *= s; }
  friend BasicExtensor2 operator-(BasicExtensor2 a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend bool operator==(const BasicExtensor2&, const BasicExtensor2&) = default;
};

using Extensor2 = BasicExtensor2<double>;
using ExactExtensor2 = BasicExtensor2<mpq_class>;

/// Column pairs (0-based) behind each Plücker slot; d31 is stored as minor(2, 0).
inline constexpr std::array<std::array<int, 2>, 6> kPluckerPairs{{{0, 3}, {1, 3}, {2, 3}, {1, 2}, {2, 0}, {0, 1}}};

template <class T, class P>
BasicExtensor2<T> join_t(const P& a, const P& b) {
  BasicExtensor2<T> e;
  for (std::size_t s = 0; s < 6; ++s) {
    const int i = kPluckerPairs[s][0];
    const int j = kPluckerPairs[s][1];
    e.c[s] = a[i] * b[j] - a[j] * b[i];
  }
  return e;
}

/// a ∨ b: the six 2x2 minors of the matrix with rows a and b.
inline Extensor2 join(const Point4& a, const Point4& b) { return join_t<double>(a, b); }
inline ExactExtensor2 join(const ExactPoint4& a, const ExactPoint4& b) { return join_t<mpq_class>(a, b); }

/// Minor (i, j) of an extensor, for any pair of distinct columns.
template <class T>
T extensor_minor(const BasicExtensor2<T>& e, int i, int j) {
  if (i == j) return T(0);
  for (std::size_t s = 0; s < 6; ++s) {
    if (kPluckerPairs[s][0] == i && kPluckerPairs[s][1] == j) return e.c[s];
    if (kPluckerPairs[s][0] == j && kPluckerPairs[s][1] == i) return -e.c[s];
  }
  return T(0);
}

/// d14·d23 + d24·d31 + d34·d12; zero exactly for decomposable extensors.
template <class T>
T grassmann_plucker(const BasicExtensor2<T>& e) {
  return e.c[0] * e.c[3] + e.c[1] * e.c[4] + e.c[2] * e.c[5];
}

/// L ∨ p as the four coordinates of a 3-extensor (column triples 012, 013, 023, 123).
/// Vanishes iff the point p lies on the line L (for decomposable L).
template <class T, class P>
std::array<T, 4> join_with_point(const BasicExtensor2<T>& line, const P& p) {
  static constexpr std::array<std::array<int, 3>, 4> kTriples{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  std::array<T, 4> out;
  for (std::size_t t = 0; t < 4; ++t) {
    const auto [a, b, c] = kTriples[t];
    out[t] = extensor_minor(line, a, b) * p[c] - extensor_minor(line, a, c) * p[b] +
             extensor_minor(line, b, c) * p[a];
  }
  return out;
}

/// [abcd]: Laplace expansion of the 4x4 determinant along the rows a, b.
template <class T, class P>
T bracket4_t(const P& a, const P& b, const P& c, const P& d) {
  const auto top = join_t<T>(a, b);
  const auto bottom = join_t<T>(c, d);
  auto m = [](const BasicExtensor2<T>& e, int i, int j) { return extensor_minor(e, i, j); };
  return m(top, 0, 1) * m(bottom, 2, 3) - m(top, 0, 2) * m(bottom, 1, 3) + m(top, 0, 3) * m(bottom, 1, 2) +
         m(top, 1, 2) * m(bottom, 0, 3) - m(top, 1, 3) * m(bottom, 0, 2) + m(top, 2, 3) * m(bottom, 0, 1);
}

inline double bracket4(const Point4& a, const Point4& b, const Point4& c, const Point4& d) {
  return bracket4_t<double>(a, b, c, d);
}
inline mpq_class bracket4(const ExactPoint4& a, const ExactPoint4& b, const ExactPoint4& c, const ExactPoint4& d) {
  return bracket4_t<mpq_class>(a, b, c, d);
}

double norm(const Point4& p);
double norm(const Extensor2& e);
double dot(const Extensor2& a, const Extensor2& b);

/// |[abcd]| relative to its Hadamard bound; 0 for coplanar points, at most 1.
double normalized_bracket(const Point4& a, const Point4& b, const Point4& c, const Point4& d);

}  // namespace rigidswap
