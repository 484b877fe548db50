#pragma once

#include <functional>
#include <vector>

#include "clockxy/geometry.hpp"
#include "clockxy/lattice.hpp"

namespace clockxy {

struct Singularity {
  Vec2 position;
  int degree;
};

// Circle-valued map with an analytic gradient and an explicit list of point
// singularities. Values are complex numbers on the unit circle; products are
// complex products, so degrees add under multiplication.
class SingularMap {
 public:
  SingularMap() = default;
  SingularMap(SpinMapFn value, std::function<Mat2(Vec2)> gradient,
              std::vector<Singularity> singularities)
      : value_(std::move(value)),
        gradient_(std::move(gradient)),
        singularities_(std::move(singularities)) {}

  Vec2 operator()(Vec2 p) const { return value_(p); }
  Mat2 gradient(Vec2 p) const;
  const std::vector<Singularity>& singularities() const { return singularities_; }
  const SpinMapFn& fn() const { return value_; }
  bool has_gradient() const { return static_cast<bool>(gradient_); }

 private:
  SpinMapFn value_;
  std::function<Mat2(Vec2)> gradient_;  // optional; central differences otherwise
  std::vector<Singularity> singularities_;
};

SingularMap constant_map(UnitVector v);

// (x - c)/|x - c| for sign +1, its complex conjugate for sign -1 (the
// reflection diag(1,-1) of the unit vortex). Throws at the center.
SingularMap vortex_map(Vec2 center, int sign = +1);

// Integer complex power of the unit vortex; degree n at the center.
SingularMap vortex_power(Vec2 center, int n);

// Pointwise complex product; singularity lists are concatenated (degrees at
// coincident positions are summed).
SingularMap complex_product(const SingularMap& a, const SingularMap& b);

// Post-composition with a fixed rotation of the target circle.
SingularMap rotate_target(const SingularMap& m, double alpha);

// Deforms `map` inside B_{r_outer}(center) so that it equals the unit vortex
// of the given sign exactly on B_{r_inner}(center), ramping the residual
// phase back with a smoothstep; outside B_{r_outer} the map is untouched.
// Used to put multi-vortex products into the normal form the recovery
// construction assumes near each singularity. The residual phase must stay
// within pi of its value at the inner radius.
SingularMap pin_vortex_form(const SingularMap& map, Vec2 center, int sign, double r_inner,
                            double r_outer);

Vec2 complex_mul(Vec2 a, Vec2 b);
Vec2 complex_conj(Vec2 a);

}  // namespace clockxy
