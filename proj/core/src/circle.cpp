#include "clockxy/circle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace clockxy {

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_psi(double t) {
  double n = std::floor(t / kTwoPi);
  double r = t - kTwoPi * n;  // in [0, 2*pi)
  if (r < kPi) return r;
  if (r > kPi) return r - kTwoPi;
  // Tie: candidates 2*pi*n and 2*pi*(n+1); keep the one of minimal modulus.
  return n >= 0.0 ? kPi : -kPi;
}

UnitVector::UnitVector(double angle)
    : angle_(wrap_angle(angle)), cx_(std::cos(angle_)), cy_(std::sin(angle_)) {}

UnitVector UnitVector::from_components(double x, double y) {
  double n = std::hypot(x, y);
  if (!(n > 0.0)) throw std::domain_error("UnitVector: zero vector has no direction");
  double a = std::atan2(y, x);
  if (a < 0.0) a += kTwoPi;
  return UnitVector(a);
}

double geodesic_distance(UnitVector u, UnitVector v) {
  // arccos(u.v) evaluated as 2*atan2(|u-v|, |u+v|), which stays fully
  // accurate near coincident and near antipodal pairs.
  double chord = std::hypot(u.x() - v.x(), u.y() - v.y());
  double co = std::hypot(u.x() + v.x(), u.y() + v.y());
  return 2.0 * std::atan2(chord, co);
}

double chord_distance(UnitVector u, UnitVector v) {
  return std::hypot(u.x() - v.x(), u.y() - v.y());
}

DiscreteCircle DiscreteCircle::with_states(int n) {
  if (n < 2) throw std::invalid_argument("DiscreteCircle: need at least 2 states");
  return DiscreteCircle{n, kTwoPi / n};
}

DiscreteCircle DiscreteCircle::with_theta(double theta) {
  if (!(theta > 0.0) || !(theta <= kPi))
    throw std::invalid_argument("DiscreteCircle: theta must lie in (0, pi]");
  long n = std::lround(kTwoPi / theta);
  n = std::max(n, 2l);
  if (n > 1l << 30) throw std::invalid_argument("DiscreteCircle: theta too small");
  return with_states(static_cast<int>(n));
}

int DiscreteCircle::wrap_state(long k) const {
  long r = k % n_states;
  if (r < 0) r += n_states;
  return static_cast<int>(r);
}

int DiscreteCircle::state_separation(int ka, int kb) const {
  int d = std::abs(wrap_state(kb) - wrap_state(ka));
  return std::min(d, n_states - d);
}

int fold_state_difference(long m, int n_states) {
  long r = m % n_states;
  if (r < 0) r += n_states;
  long twice = 2 * r;
  if (twice < n_states) return static_cast<int>(r);
  if (twice > n_states) return static_cast<int>(r - n_states);
  // r == N/2 exactly: sign follows wrap_psi's tie rule.
  return m >= 0 ? static_cast<int>(r) : static_cast<int>(-r);
}

int project_to_discrete(UnitVector u, const DiscreteCircle& circle) {
  double ratio = u.angle() / circle.theta;
  double k = std::floor(ratio);
  // Phases that are exact multiples of theta can land a few ulps below the
  // sector boundary; pull those up so projection is the identity on states.
  double tol = 16.0 * DBL_EPSILON * std::max(1.0, ratio);
  if (ratio - k > 1.0 - tol && ratio - k < 1.0 + tol) k += 1.0;
  long idx = static_cast<long>(k);
  return circle.wrap_state(idx);
}

GeodesicPath::GeodesicPath(UnitVector from, UnitVector to)
    : start_(from), end_(to), length_(geodesic_distance(from, to)) {
  double psi = wrap_psi(to.angle() - from.angle());
  // Antipodal pairs rotate counterclockwise, consistent with Psi(pi) = pi.
  // Angles that are antipodal in exact arithmetic can land a few ulps off
  // after rounding, so the convention snaps within 1e-12 of the tie.
  dir_ = (psi >= 0.0 || psi <= -kPi + 1e-12) ? +1 : -1;
}

UnitVector GeodesicPath::eval(double t) const {
  if (t <= 0.0) return start_;
  if (t >= length_) return end_;
  return UnitVector(start_.angle() + dir_ * t);
}

UnitVector midpoint(UnitVector u, UnitVector v) {
  GeodesicPath geo(u, v);
  return geo.eval(0.5 * geo.length());
}

}  // namespace clockxy
