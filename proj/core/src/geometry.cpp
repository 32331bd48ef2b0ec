#include "rigidswap/geometry.hpp"

namespace rigidswap {

ExactPoint4 to_exact(const Point4& p) {
  return {mpq_class(p[0]), mpq_class(p[1]), mpq_class(p[2]), mpq_class(p[3])};
}

Point4 to_double(const ExactPoint4& p) { return {p[0].get_d(), p[1].get_d(), p[2].get_d(), p[3].get_d()}; }

double norm(const Point4& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]); }

double norm(const Extensor2& e) { return std::sqrt(dot(e, e)); }

double dot(const Extensor2& a, const Extensor2& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}

double normalized_bracket(const Point4& a, const Point4& b, const Point4& c, const Point4& d) {
  const double bound = norm(a) * norm(b) * norm(c) * norm(d);
  if (bound == 0.0) return 0.0;
  return std::abs(bracket4(a, b, c, d)) / bound;
}

}  // namespace rigidswap
