#include "clockxy/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace clockxy {

namespace {

double linf(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }

struct Projection {
  Vec2 point;
  double dist;
  int side;  // 0 bottom, 1 right, 2 top, 3 left
};

// Nearest point of the cell boundary; ties resolved by the fixed side
// priority bottom, right, top, left so the construction is deterministic.
Projection project_to_boundary(Vec2 origin, double h, Vec2 p) {
  double d_bottom = p.y - origin.y;
  double d_right = origin.x + h - p.x;
  double d_top = origin.y + h - p.y;
  double d_left = p.x - origin.x;
  double d = std::min(std::min(d_bottom, d_right), std::min(d_top, d_left));
  if (d == d_bottom) return {{p.x, origin.y}, d, 0};
  if (d == d_right) return {{origin.x + h, p.y}, d, 1};
  if (d == d_top) return {{p.x, origin.y + h}, d, 2};
  return {{origin.x, p.y}, d, 3};
}

// defbcases evaluation on a side of length L with plateau length ell.
UnitVector eval_datum(double t, double L, double ell, UnitVector v1, UnitVector v2,
                      UnitVector v3) {
  if (t < ell) return v1;
  if (t < 2.0 * ell) {
    GeodesicPath g(v1, v2);
    return g.eval(g.length() / ell * (t - ell));
  }
  if (t < L - 2.0 * ell) return v2;
  if (t < L - ell) {
    GeodesicPath g(v2, v3);
    return g.eval(g.length() / ell * (t - (L - 2.0 * ell)));
  }
  return v3;
}

}  // namespace

int sector_state(Vec2 rel, int sign, const DiscreteCircle& circle) {
  double ang = std::atan2(rel.y, rel.x);
  if (sign < 0) ang = -ang;
  if (ang < 0.0) ang += kTwoPi;
  return project_to_discrete(UnitVector(ang), circle);
}

SpinField vortex_field(Vec2 center, int sign, DomainPtr domain, DiscreteCircle circle) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("vortex_field: sign must be +/-1");
  if (!domain->shape().contains(center))
    throw std::invalid_argument("vortex_field: center must lie inside the domain");
  SpinField f;
  f.domain = std::move(domain);
  f.circle = circle;
  f.states.resize(f.domain->site_count());
  for (int id = 0; id < f.domain->site_count(); ++id) {
    f.states[id] = sector_state(f.domain->position(id) - center, sign, circle);
  }
  return f;
}

double radius_r_eps(double eps, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("radius_r_eps: theta must be > 0");
  return 4.0 * eps / theta;
}

BoundaryDatum::BoundaryDatum(SideRef side, UnitVector v1, UnitVector v2, UnitVector v3,
                             double c0, double eps, double theta)
    : side_(side), v1_(v1), v2_(v2), v3_(v3), c0_(c0), eps_(eps), theta_(theta) {
  if (!(c0 > 0.0) || !(eps > 0.0) || !(theta > 0.0))
    throw std::invalid_argument("BoundaryDatum: c0, eps, theta must be > 0");
  plateau_ = c0 * eps / theta;
  if (!(side.length >= 4.0 * plateau_))
    throw std::invalid_argument(
        "BoundaryDatum: side shorter than 4*c0*eps/theta; shrink eps or c0");
}

UnitVector BoundaryDatum::eval(double t) const {
  return eval_datum(t, side_.length, plateau_, v1_, v2_, v3_);
}

UnitVector BoundaryDatum::eval_point(Vec2 p) const {
  double t = side_.axis == 0 ? p.x - side_.origin.x : p.y - side_.origin.y;
  return eval(t);
}

BoundaryDatum boundary_datum(SideRef side, UnitVector v1, UnitVector v2, UnitVector v3,
                             double c0, double eps, double theta) {
  return BoundaryDatum(side, v1, v2, v3, c0, eps, theta);
}

namespace {

// Per-site evaluation of the flat recovery: geodesic transition from the
// boundary datum of the site's lambda-cell towards the projected cell value.
int flat_site_state(Vec2 pos, const PcField& pc, const DiscreteCircle& circle, double eps,
                    double c0) {
  const double lambda = pc.lambda;
  auto [zx, zy] = pc.cell_of(pos);
  Vec2 origin{lambda * zx, lambda * zy};
  Projection proj = project_to_boundary(origin, lambda, pos);

  // Side data per eq-like layout: corners of the side and the traces of the
  // two adjacent cells, midpoint value on the middle plateau.
  int cx = zx, cy = zy;       // corner cell z' (cell containing the side origin)
  int axis = 0;               // direction of the side
  int mx = zx, my = zy - 1;   // trace cells: minus has the smaller coordinate
  int px = zx, py = zy;
  switch (proj.side) {
    case 0:  // bottom: origin at lambda*z, along e1
      break;
    case 1:  // right: origin at lambda*(z + e1), along e2
      cx = zx + 1;
      axis = 1;
      mx = zx; my = zy; px = zx + 1; py = zy;
      break;
    case 2:  // top: origin at lambda*(z + e2), along e1
      cy = zy + 1;
      mx = zx; my = zy; px = zx; py = zy + 1;
      break;
    case 3:  // left: origin at lambda*z, along e2
      axis = 1;
      mx = zx - 1; my = zy; px = zx; py = zy;
      break;
  }
  UnitVector v1 = pc.value(cx, cy);
  UnitVector v3 = axis == 0 ? pc.value(cx + 1, cy) : pc.value(cx, cy + 1);
  UnitVector v2 = midpoint(pc.value(mx, my), pc.value(px, py));

  double so = axis == 0 ? lambda * cx : lambda * cy;
  double t = (axis == 0 ? proj.point.x : proj.point.y) - so;
  UnitVector b = eval_datum(t, lambda, c0 * eps / circle.theta, v1, v2, v3);

  UnitVector cell_value = pc.value(zx, zy);
  GeodesicPath geo(b, cell_value);
  UnitVector ubar = geo.eval(circle.theta / eps * proj.dist);
  return project_to_discrete(ubar, circle);
}

void check_pc_cover(const PcField& pc, const LatticeDomain& dom) {
  double eps = dom.epsilon();
  auto cell = [&](double v) { return static_cast<int>(std::floor(v / pc.lambda)); };
  int zx_min = cell(eps * dom.ix0()) - 1;
  int zx_max = cell(eps * (dom.ix0() + dom.nx() - 1)) + 1;
  int zy_min = cell(eps * dom.iy0()) - 1;
  int zy_max = cell(eps * (dom.iy0() + dom.ny() - 1)) + 1;
  if (!pc.has_cell(zx_min, zy_min) || !pc.has_cell(zx_max, zy_max))
    throw std::invalid_argument(
        "recovery_flat: pc field must cover the domain plus a one-cell margin");
}

// Almost-continuity check over cells whose closures touch; `skip` exempts
// cells (used to leave the vortex squares out, where the pc samples wind).
template <typename Skip>
void check_delta(const PcField& pc, double delta, Skip skip) {
  for (int zy = pc.zy0; zy < pc.zy0 + pc.ny; ++zy) {
    for (int zx = pc.zx0; zx < pc.zx0 + pc.nx; ++zx) {
      if (skip(zx, zy)) continue;
      static constexpr int dx[4] = {1, 0, 1, -1};
      static constexpr int dy[4] = {0, 1, 1, 1};
      for (int d = 0; d < 4; ++d) {
        int ox = zx + dx[d], oy = zy + dy[d];
        if (!pc.has_cell(ox, oy) || skip(ox, oy)) continue;
        double dist = std::abs(wrap_psi(pc.angle_at(ox, oy) - pc.angle_at(zx, zy)));
        if (dist > delta)
          throw std::invalid_argument(
              "recovery: adjacent pc values exceed the almost-continuity bound delta");
      }
    }
  }
}

}  // namespace

SpinField recovery_flat(const PcField& pc, DomainPtr domain, DiscreteCircle circle,
                        const RecoveryOptions& opts) {
  const double eps = domain->epsilon();
  const double theta = circle.theta;
  const double c0 = opts.c0 > 0.0 ? opts.c0 : kDefaultC0Flat;
  if (!(pc.lambda >= 4.0 * c0 * eps / theta))
    throw std::invalid_argument(
        "recovery_flat: lambda < 4*c0*eps/theta, boundary data would overlap");
  if (opts.strict_scales && !(kPi * eps / theta < pc.lambda / 4.0))
    throw std::invalid_argument(
        "recovery_flat: scale separation pi*eps/theta < lambda/4 violated");
  check_pc_cover(pc, *domain);
  if (opts.check_delta)
    check_delta(pc, opts.max_neighbor_jump, [](int, int) { return false; });

  SpinField f;
  f.domain = std::move(domain);
  f.circle = circle;
  f.states.resize(f.domain->site_count());
  for (int id = 0; id < f.domain->site_count(); ++id) {
    f.states[id] = flat_site_state(f.domain->position(id), pc, circle, eps, c0);
  }
  return f;
}

DyadicDecomposition DyadicDecomposition::build(Vec2 center, double lambda, double eta,
                                               double theta) {
  if (!(lambda > 0.0) || !(eta > 0.0) || !(theta > 0.0))
    throw std::invalid_argument("dyadic_decomposition: parameters must be > 0");
  int exp = 0;
  double mant = std::frexp(lambda, &exp);
  if (mant != 0.5 || lambda > 1.0)
    throw std::invalid_argument("dyadic_decomposition: lambda must be 2^-n");

  DyadicDecomposition d;
  d.center_ = center;
  d.lambda_ = lambda;
  d.eta_ = eta;
  d.theta_ = theta;

  // maximal m with 2^m * lambda <= eta/2
  if (!(lambda <= eta / 2.0))
    throw std::invalid_argument("dyadic_decomposition: eta too small for m(lambda) >= 2");
  int m = 0;
  while (std::ldexp(lambda, m + 1) <= eta / 2.0) ++m;
  if (m < 2)
    throw std::invalid_argument("dyadic_decomposition: eta too small for m(lambda) >= 2");
  d.m_ = m;

  // unique k with 2^-k <= theta < 2^-(k-1)
  int k = -4;
  while (std::ldexp(1.0, -k) > theta) ++k;
  d.keps_ = k;
  if (k < 1)
    throw std::invalid_argument("dyadic_decomposition: theta too large for a dyadic cutoff");
  return d;
}

double DyadicDecomposition::half_side(int k) const {
  if (k == -2) return (std::ldexp(1.0, m_) + 1.0) * lambda_;
  if (k == -1) return std::ldexp(1.0, m_) * lambda_;
  return (std::ldexp(1.0, m_) - 2.0 + std::ldexp(1.0, -k)) * lambda_;
}

double DyadicDecomposition::pitch(int k) const { return std::ldexp(lambda_, -std::max(k, 0)); }

bool DyadicDecomposition::in_square(Vec2 p) const {
  double a = half_side(-1);
  Vec2 r = p - center_;
  return r.x >= -a && r.x < a && r.y >= -a && r.y < a;
}

bool DyadicDecomposition::in_core(Vec2 p) const {
  return linf(p - center_) <= half_side(keps_ - 1);
}

bool DyadicDecomposition::cube_in_layer(int k, long zx, long zy) const {
  double h = pitch(k);
  double x0 = h * zx - center_.x, x1 = x0 + h;
  double y0 = h * zy - center_.y, y1 = y0 + h;
  double outer = half_side(k - 1);
  double inner = half_side(k);
  bool inside_outer = std::max(std::abs(x0), std::abs(x1)) <= outer &&
                      std::max(std::abs(y0), std::abs(y1)) <= outer;
  bool overlaps_inner = x0 < inner && x1 > -inner && y0 < inner && y1 > -inner;
  return inside_outer && !overlaps_inner;
}

std::optional<DyadicDecomposition::CubeRef> DyadicDecomposition::cube_at(Vec2 p) const {
  for (int k = -1; k <= keps_; ++k) {
    double h = pitch(k);
    long zx = static_cast<long>(std::floor(p.x / h));
    long zy = static_cast<long>(std::floor(p.y / h));
    if (cube_in_layer(k, zx, zy)) return CubeRef{k, zx, zy};
  }
  return std::nullopt;
}

Vec2 DyadicDecomposition::cube_origin(const CubeRef& c) const {
  double h = pitch(c.k);
  return {h * c.zx, h * c.zy};
}

std::vector<DyadicDecomposition::CubeRef> DyadicDecomposition::layer_cubes(int k) const {
  std::vector<CubeRef> out;
  double h = pitch(k);
  double outer = half_side(k - 1);
  long zx0 = static_cast<long>(std::floor((center_.x - outer) / h)) - 1;
  long zx1 = static_cast<long>(std::floor((center_.x + outer) / h)) + 1;
  long zy0 = static_cast<long>(std::floor((center_.y - outer) / h)) - 1;
  long zy1 = static_cast<long>(std::floor((center_.y + outer) / h)) + 1;
  for (long zy = zy0; zy <= zy1; ++zy)
    for (long zx = zx0; zx <= zx1; ++zx)
      if (cube_in_layer(k, zx, zy)) out.push_back({k, zx, zy});
  return out;
}

namespace {

struct VortexPatch {
  Vec2 center;
  int sign;
  DyadicDecomposition dd;
};

// The piecewise-constant function on the dyadic cubes: value of the cube
// containing the point, sampled at the cube midpoint.
UnitVector wbar_value(const SingularMap& map, const VortexPatch& patch, const PcField& pc,
                      Vec2 p) {
  auto cube = patch.dd.cube_at(p);
  if (!cube) {
    auto [zx, zy] = pc.cell_of(p);
    return pc.value(zx, zy);
  }
  Vec2 c = cell_center(patch.dd.pitch(cube->k), cube->zx, cube->zy);
  Vec2 v = map(c);
  return UnitVector::from_components(v.x, v.y);
}

int dyadic_site_state(const SingularMap& map, const VortexPatch& patch, const PcField& pc,
                      Vec2 pos, const DiscreteCircle& circle, double eps, double c0) {
  const DyadicDecomposition& dd = patch.dd;
  if (dd.in_core(pos)) return sector_state(pos - patch.center, patch.sign, circle);

  auto cube = dd.cube_at(pos);
  if (!cube || cube->k < 0 || cube->k >= dd.k_eps())
    throw std::logic_error("recovery_with_vortices: site escaped the dyadic layers");

  double h = dd.pitch(cube->k);
  Vec2 origin = dd.cube_origin(*cube);
  Projection proj = project_to_boundary(origin, h, pos);

  // Sides on the inner square boundary use the next layer's (halved) side
  // structure; everything else keeps the cube's own pitch.
  int kstar = cube->k;
  if (linf(proj.point - patch.center) == dd.half_side(cube->k)) kstar = cube->k + 1;
  double hs = dd.pitch(kstar);
  double plateau = std::ldexp(c0 * eps / circle.theta, -kstar);

  int axis = (proj.side == 0 || proj.side == 2) ? 0 : 1;
  double coord = axis == 0 ? proj.point.x : proj.point.y;
  double so = hs * std::floor(coord / hs);
  double t = coord - so;

  Vec2 corner1 = axis == 0 ? Vec2{so, proj.point.y} : Vec2{proj.point.x, so};
  Vec2 corner2 = axis == 0 ? Vec2{so + hs, proj.point.y} : Vec2{proj.point.x, so + hs};
  Vec2 mid = axis == 0 ? Vec2{so + 0.5 * hs, proj.point.y} : Vec2{proj.point.x, so + 0.5 * hs};
  Vec2 off = axis == 0 ? Vec2{0.0, 0.25 * hs} : Vec2{0.25 * hs, 0.0};

  UnitVector v1 = wbar_value(map, patch, pc, corner1);
  UnitVector v3 = wbar_value(map, patch, pc, corner2);
  UnitVector v2 = midpoint(wbar_value(map, patch, pc, mid - off),
                           wbar_value(map, patch, pc, mid + off));
  UnitVector b = eval_datum(t, hs, plateau, v1, v2, v3);

  Vec2 cv = map(cell_center(h, cube->zx, cube->zy));
  UnitVector cell_value = UnitVector::from_components(cv.x, cv.y);
  GeodesicPath geo(b, cell_value);
  UnitVector ubar = geo.eval(circle.theta / eps * proj.dist);
  return project_to_discrete(ubar, circle);
}

}  // namespace

SpinField recovery_with_vortices(const SingularMap& map, const VorticityMeasure& mu,
                                 double lambda, double eta, DomainPtr domain,
                                 DiscreteCircle circle, const RecoveryOptions& opts) {
  const double eps = domain->epsilon();
  const double theta = circle.theta;
  const double c0 = opts.c0 > 0.0 ? opts.c0 : kDefaultC0Vortex;

  if (mu.atoms.empty())
    throw std::invalid_argument("recovery_with_vortices: no singularities; use recovery_flat");
  if (opts.strict_scales && !(eps / theta < lambda / 100.0))
    throw std::invalid_argument(
        "recovery_with_vortices: scale separation eps/theta < lambda/100 violated");
  if (!(lambda >= 4.0 * c0 * eps / theta))
    throw std::invalid_argument(
        "recovery_with_vortices: lambda < 4*c0*eps/theta, boundary data would overlap");

  std::vector<VortexPatch> patches;
  for (const auto& atom : mu.atoms) {
    if (atom.charge != 1 && atom.charge != -1)
      throw std::invalid_argument("recovery_with_vortices: all degrees must be +/-1");
    double gx = atom.position.x / lambda;
    double gy = atom.position.y / lambda;
    if (std::abs(gx - std::round(gx)) > 1e-9 || std::abs(gy - std::round(gy)) > 1e-9)
      throw std::invalid_argument(
          "recovery_with_vortices: singularities must sit on the lambda-lattice");
    Vec2 snapped{lambda * std::round(gx), lambda * std::round(gy)};
    patches.push_back(
        {snapped, atom.charge, DyadicDecomposition::build(snapped, lambda, eta, theta)});
  }
  for (std::size_t i = 0; i < patches.size(); ++i) {
    for (std::size_t j = i + 1; j < patches.size(); ++j) {
      if (norm(patches[i].center - patches[j].center) < 2.0 * eta)
        throw std::invalid_argument(
            "recovery_with_vortices: B_eta neighborhoods of singularities overlap");
    }
  }
  // The map must be the (possibly reflected) unit vortex throughout each
  // square; spot-check on a circle inside it.
  for (const auto& patch : patches) {
    SingularMap expected = vortex_map(patch.center, patch.sign);
    double r = 0.75 * patch.dd.half_side(-1);
    for (int s = 0; s < 16; ++s) {
      double a = kTwoPi * s / 16.0;
      Vec2 p{patch.center.x + r * std::cos(a), patch.center.y + r * std::sin(a)};
      if (norm(map(p) - expected(p)) > 1e-8)
        throw std::invalid_argument(
            "recovery_with_vortices: map is not the unit vortex near a singularity");
    }
  }

  BBox cover = domain->shape().bbox();
  cover.lo = cover.lo - Vec2{2.0 * lambda, 2.0 * lambda};
  cover.hi = cover.hi + Vec2{2.0 * lambda, 2.0 * lambda};
  PcField pc = pc_from_map(map.fn(), lambda, cover);

  if (opts.check_delta) {
    auto skip = [&](int zx, int zy) {
      Vec2 c = cell_center(lambda, zx, zy);
      for (const auto& patch : patches) {
        double inner = (std::ldexp(1.0, patch.dd.m()) - 2.0) * lambda;
        if (linf(c - patch.center) <= inner) return true;
      }
      return false;
    };
    check_delta(pc, opts.max_neighbor_jump, skip);
  }

  SpinField f;
  f.domain = std::move(domain);
  f.circle = circle;
  f.states.resize(f.domain->site_count());
  for (int id = 0; id < f.domain->site_count(); ++id) {
    Vec2 pos = f.domain->position(id);
    const VortexPatch* inside = nullptr;
    for (const auto& patch : patches) {
      if (patch.dd.in_square(pos)) {
        inside = &patch;
        break;
      }
    }
    f.states[id] = inside ? dyadic_site_state(map, *inside, pc, pos, circle, eps, c0)
                          : flat_site_state(pos, pc, circle, eps, c0);
  }
  return f;
}

SingularMap split_degree(const SingularMap& map, Vec2 x1, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("split_degree: tau must be > 0");
  const Singularity* found = nullptr;
  for (const auto& s : map.singularities()) {
    if (norm(s.position - x1) < 1e-12) found = &s;
  }
  if (!found) throw std::invalid_argument("split_degree: no singularity at x1");
  if (std::abs(found->degree) < 2)
    throw std::invalid_argument("split_degree: degree must satisfy |d| >= 2");

  Vec2 at = found->position;  // exact stored position, so the factors merge
  Vec2 fresh{at.x + tau, at.y};
  for (const auto& s : map.singularities()) {
    if (norm(s.position - fresh) < 1e-12)
      throw std::invalid_argument("split_degree: tau collides with an existing singularity");
  }
  int s = found->degree > 0 ? 1 : -1;
  return complex_product(complex_product(map, vortex_map(at, -s)), vortex_map(fresh, s));
}

}  // namespace clockxy
