#include "clockxy/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "clockxy/kahan.hpp"

namespace clockxy {

double phi_parametric(double xi21, double xi22, double xi11, double xi12, double, double) {
  return std::hypot(xi21, xi22) + std::hypot(xi11, xi12);
}

double anisotropic_dirichlet(const SingularMap& map, const Shape& region,
                             const QuadratureSpec& quad) {
  if (quad.refinement < 1) throw std::invalid_argument("anisotropic_dirichlet: refinement >= 1");
  const double h = 1.0 / quad.refinement;
  const BBox box = region.bbox();
  const auto& sings = map.singularities();
  const double r = quad.exclusion_radius;

  auto excluded = [&](Vec2 p) {
    if (r <= 0.0) return false;
    for (const auto& s : sings) {
      if (norm(p - s.position) < r) return true;
    }
    return false;
  };

  long jx0 = static_cast<long>(std::floor(box.lo.x / h));
  long jx1 = static_cast<long>(std::ceil(box.hi.x / h));
  long jy0 = static_cast<long>(std::floor(box.lo.y / h));
  long jy1 = static_cast<long>(std::ceil(box.hi.y / h));

  KahanSum total;
  for (long jy = jy0; jy < jy1; ++jy) {
    for (long jx = jx0; jx < jx1; ++jx) {
      Vec2 c = cell_center(h, jx, jy);
      if (!region.contains(c) || excluded(c)) continue;
      total.add(h * h * norm_2_1(map.gradient(c)));
    }
  }
  return total.value();
}

namespace {

// Sides between horizontally/vertically adjacent cells; each interior side
// is visited once (from its lower/left cell).
template <typename Value, typename HasCell>
double pc_jump_sum(int zx0, int zy0, int nx, int ny, double lambda,
                   const std::optional<Shape>& region, Value value, HasCell has) {
  KahanSum total;
  auto in_region = [&](int zx, int zy) {
    if (!region) return true;
    return region->contains({lambda * zx, lambda * zy});
  };
  for (int zy = zy0; zy < zy0 + ny; ++zy) {
    for (int zx = zx0; zx < zx0 + nx; ++zx) {
      if (!has(zx, zy) || !in_region(zx, zy)) continue;
      if (has(zx + 1, zy) && in_region(zx + 1, zy))
        total.add(lambda * value(zx, zy, zx + 1, zy));
      if (has(zx, zy + 1) && in_region(zx, zy + 1))
        total.add(lambda * value(zx, zy, zx, zy + 1));
    }
  }
  return total.value();
}

}  // namespace

double jump_functional(const PcField& field, const std::optional<Shape>& region) {
  auto value = [&](int ax, int ay, int bx, int by) {
    double d = wrap_psi(field.angle_at(bx, by) - field.angle_at(ax, ay));
    return std::abs(d);
  };
  auto has = [&](int zx, int zy) { return field.has_cell(zx, zy); };
  return pc_jump_sum(field.zx0, field.zy0, field.nx, field.ny, field.lambda, region, value, has);
}

double jump_functional(const SpinField& field, const std::optional<Shape>& region) {
  const auto& dom = *field.domain;
  const double theta = field.circle.theta;
  auto value = [&](int ax, int ay, int bx, int by) {
    int ka = field.states[dom.site_at(ax, ay)];
    int kb = field.states[dom.site_at(bx, by)];
    return field.circle.state_separation(ka, kb) * theta;
  };
  auto has = [&](int zx, int zy) { return dom.site_at(zx, zy) >= 0; };
  return pc_jump_sum(dom.ix0(), dom.iy0(), dom.nx(), dom.ny(), dom.epsilon(), region, value, has);
}

}  // namespace clockxy
