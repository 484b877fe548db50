#pragma once

#include "clockxy/geometry.hpp"

namespace clockxy {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Wrap an angle into [0, 2*pi).
double wrap_angle(double a);

// Psi(t) = t - Q(t) in [-pi, pi], where Q(t) is the multiple of 2*pi closest
// to t; at the tie t = pi mod 2*pi the multiple of minimal modulus is taken,
// so Psi(pi) = pi and Psi(-pi) = -pi.
double wrap_psi(double t);

class UnitVector {
 public:
  UnitVector() : UnitVector(0.0) {}
  explicit UnitVector(double angle);
  static UnitVector from_components(double x, double y);

  double angle() const { return angle_; }
  double x() const { return cx_; }
  double y() const { return cy_; }
  Vec2 vec() const { return {cx_, cy_}; }

 private:
  double angle_;  // in [0, 2*pi)
  double cx_, cy_;
};

// Arc-length distance on the circle, arccos(u.v) in [0, pi].
double geodesic_distance(UnitVector u, UnitVector v);
double chord_distance(UnitVector u, UnitVector v);

// The set of N equi-spaced points on the circle, theta = 2*pi/N. Spins are
// handled as integer state indices so that state equality is exact and
// geodesic distances between states are exact multiples of theta.
struct DiscreteCircle {
  int n_states = 2;
  double theta = kPi;

  static DiscreteCircle with_states(int n);
  // Snaps to n = round(2*pi/theta); the stored theta is 2*pi/n.
  static DiscreteCircle with_theta(double theta);

  int wrap_state(long k) const;
  double state_angle(int k) const { return wrap_state(k) * theta; }
  UnitVector state_vector(int k) const { return UnitVector(state_angle(k)); }
  // |k_b - k_a| folded into [0, N/2]; geodesic distance between the states
  // is state_distance * theta.
  int state_separation(int ka, int kb) const;
};

// Psi applied to a state difference: folds m into [-N/2, N/2], resolving the
// tie at N/2 by the sign convention of wrap_psi. Requires |m| < N.
int fold_state_difference(long m, int n_states);

// Index of the sector [k*theta, (k+1)*theta) containing the phase of u.
int project_to_discrete(UnitVector u, const DiscreteCircle& circle);

enum class Orientation { counterclockwise, clockwise };

// Unit speed geodesic Geo[from, to], clamped to the endpoints outside
// [0, length]. Antipodal endpoints rotate counterclockwise.
class GeodesicPath {
 public:
  GeodesicPath(UnitVector from, UnitVector to);

  UnitVector start() const { return start_; }
  UnitVector end() const { return end_; }
  double length() const { return length_; }
  Orientation orientation() const {
    return dir_ > 0 ? Orientation::counterclockwise : Orientation::clockwise;
  }
  UnitVector eval(double t) const;

 private:
  UnitVector start_, end_;
  double length_;
  int dir_;
};

inline UnitVector geo_eval(const GeodesicPath& path, double t) { return path.eval(t); }

UnitVector midpoint(UnitVector u, UnitVector v);

// Radius within which the geodesic stability property
// |Geo[u1,b](t) - Geo[u2,b](t)| <= d(u1,u2) is asserted; not quantified by
// the theory, exposed as a tunable constant.
inline constexpr double kDefaultStabilityRadius = 0.5;

}  // namespace clockxy
