#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "clockxy/circle.hpp"
#include "clockxy/geometry.hpp"

namespace clockxy {

struct Bond {
  std::int32_t a;     // site ids, a's integer coordinates precede b's
  std::int32_t b;
  std::uint8_t axis;  // 0: b = a + e1, 1: b = a + e2
};

// Lattice domain: the sites of eps*Z^2 inside a shape, with the unordered
// nearest-neighbor bonds whose endpoints are both inside. Sites are ordered
// row-major by integer coordinates (y outer, x inner); parallel reductions
// over sites or bonds must merge fixed chunks in index order so results are
// bit-stable.
class LatticeDomain {
 public:
  LatticeDomain(Shape shape, double epsilon);

  double epsilon() const { return eps_; }
  const Shape& shape() const { return shape_; }

  int site_count() const { return static_cast<int>(sites_.size()); }
  std::pair<int, int> site(int id) const { return sites_[id]; }
  Vec2 position(int id) const {
    auto [ix, iy] = sites_[id];
    return {eps_ * ix, eps_ * iy};
  }
  // -1 when (ix, iy) is not a site.
  int site_at(int ix, int iy) const;
  const std::vector<Bond>& bonds() const { return bonds_; }

  int ix0() const { return ix0_; }
  int iy0() const { return iy0_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

 private:
  Shape shape_;
  double eps_;
  int ix0_, iy0_, nx_, ny_;
  std::vector<std::int32_t> grid_;             // window cell -> site id or -1
  std::vector<std::pair<int, int>> sites_;     // id -> integer coordinates
  std::vector<Bond> bonds_;
};

using DomainPtr = std::shared_ptr<const LatticeDomain>;

DomainPtr build_domain(const Shape& shape, double epsilon);

// Continuum circle-valued map; must return a unit vector. Maps with point
// singularities throw std::domain_error when evaluated there.
using SpinMapFn = std::function<Vec2(Vec2)>;

struct SpinField {
  DomainPtr domain;
  DiscreteCircle circle;
  std::vector<std::int32_t> states;

  double phase(int site) const { return circle.state_angle(states[site]); }
  UnitVector value(int site) const { return circle.state_vector(states[site]); }
  std::int32_t state_at(int ix, int iy) const {
    int id = domain->site_at(ix, iy);
    return id < 0 ? -1 : states[id];
  }
};

SpinField constant_field(DomainPtr domain, DiscreteCircle circle, int state = 0);

enum class SampleMode { at_site, midpoint_of_cell };

// Projects map samples to the discrete circle, sampling either at the site
// or at the center of the site's half-open cell.
SpinField sample_map(const SpinMapFn& map, DomainPtr domain, DiscreteCircle circle,
                     SampleMode mode);

struct JumpRecord {
  std::int32_t site_minus;  // trace cells: minus has the smaller coordinate
  std::int32_t site_plus;
  UnitVector trace_minus;
  UnitVector trace_plus;
  double jump_length;  // geodesic distance of the traces, exact k*theta
  Vec2 normal;         // normal of the jump segment: +e1 or +e2 (minus -> plus)
  double edge_measure; // = eps
};

// Jump set of the piecewise-constant interpolation: one record per bond with
// differing endpoint states; zero-jump bonds are not emitted.
std::vector<JumpRecord> jump_set(const SpinField& field);

// Piecewise-constant circle-valued field on a lambda-grid of half-open cells
// I_lambda(lambda*z); stores one phase per cell.
struct PcField {
  double lambda = 1.0;
  int zx0 = 0, zy0 = 0, nx = 0, ny = 0;
  std::vector<double> angle;  // row-major, y outer

  bool has_cell(int zx, int zy) const {
    return zx >= zx0 && zx < zx0 + nx && zy >= zy0 && zy < zy0 + ny;
  }
  double angle_at(int zx, int zy) const;
  UnitVector value(int zx, int zy) const { return UnitVector(angle_at(zx, zy)); }
  // Cell of a point under the half-open convention.
  std::pair<int, int> cell_of(Vec2 p) const;
};

// Center of the half-open cell h*z + [0,h)^2. All constructions must obtain
// cell centers through this helper so sampled values agree bitwise.
inline Vec2 cell_center(double h, long zx, long zy) {
  return {h * (zx + 0.5), h * (zy + 0.5)};
}

// Midpoint samples of a continuum map on all lambda-cells meeting `cover`.
PcField pc_from_map(const SpinMapFn& map, double lambda, const BBox& cover);
// View of a spin field as a pc field on its own grid (phases k*theta).
PcField pc_from_field(const SpinField& field);

}  // namespace clockxy
