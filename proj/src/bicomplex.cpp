#include "bhm/bicomplex.hpp"

#include <ostream>

#include "bhm/error.hpp"

namespace bhm {

bool is_zero_divisor(const Bicomplex& q, double tol) {
  const double r = real_norm(q);
  return negligible(std::abs(complex_norm(q)), r * r, tol);
}

Bicomplex inverse(const Bicomplex& q, double tol) {
  if (is_zero_divisor(q, tol)) fail(ErrorCode::ZeroDivisor, "bicomplex number is not a unit");
  const Complex cn = complex_norm(q);
  return {q.q1 / cn, -q.q2 / cn};
}

Bicomplex operator/(const Bicomplex& a, const Bicomplex& b) { return a * inverse(b); }

std::ostream& operator<<(std::ostream& os, const Bicomplex& q) {
  const auto x = q.real4();
  return os << '[' << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ']';
}

std::ostream& operator<<(std::ostream& os, const Hyperbolic& h) {
  return os << '[' << h.x << ", " << h.y << ']';
}

}  // namespace bhm
