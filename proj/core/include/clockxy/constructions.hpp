#pragma once

#include <optional>
#include <vector>

#include "clockxy/lattice.hpp"
#include "clockxy/maps.hpp"
#include "clockxy/vorticity.hpp"

namespace clockxy {

// Tuning knobs of the recovery constructions. c0 <= 0 selects the
// construction's own default: 2*pi + 0.1 for recovery_flat and 393 for
// recovery_with_vortices. Those defaults assume the asymptotic regime
// eps << theta; at coarse scales the transition plateaus of width
// c0*eps/theta must fit inside a grid cell, so callers (and the sweep
// harness) override c0 and disable the strict scale checks.
struct RecoveryOptions {
  double c0 = 0.0;
  double max_neighbor_jump = 2.0;  // almost-continuity bound on adjacent pc values
  bool check_delta = true;
  bool strict_scales = true;
};

inline constexpr double kDefaultC0Flat = kTwoPi + 0.1;
inline constexpr double kDefaultC0Vortex = 393.0;
// Interior rigidity constant of the dyadic interpolation layers.
inline constexpr double kRigidityC2 = 96.0;

// Sector discretization of the (possibly reflected) unit vortex: the state
// at eps*i is the index k with angle(eps*i - center) in [k*theta, (k+1)*theta);
// a site exactly at the center gets state 0. sign -1 applies the reflection
// diag(1,-1), i.e. discretizes the conjugate vortex.
SpinField vortex_field(Vec2 center, int sign, DomainPtr domain, DiscreteCircle circle);

// State of the sector discretization at a single point (relative position).
int sector_state(Vec2 rel, int sign, const DiscreteCircle& circle);

// Radius 4*eps/theta of the vortex core region.
double radius_r_eps(double eps, double theta);

struct SideRef {
  Vec2 origin;
  int axis = 0;  // side = {origin + t*e_axis : t in [0, length]}
  double length = 0.0;
};

// Boundary transition on one grid side: constant v1 and v3 near the
// endpoints, geodesic ramps of width c0*eps/theta towards the middle
// plateau v2. Requires length >= 4*c0*eps/theta.
class BoundaryDatum {
 public:
  BoundaryDatum(SideRef side, UnitVector v1, UnitVector v2, UnitVector v3,
                double c0, double eps, double theta);

  UnitVector eval(double t) const;   // parameter along the side
  UnitVector eval_point(Vec2 p) const;

  const SideRef& side() const { return side_; }
  double plateau() const { return plateau_; }
  UnitVector v1() const { return v1_; }
  UnitVector v2() const { return v2_; }
  UnitVector v3() const { return v3_; }

 private:
  SideRef side_;
  UnitVector v1_, v2_, v3_;
  double c0_, eps_, theta_, plateau_;
};

BoundaryDatum boundary_datum(SideRef side, UnitVector v1, UnitVector v2, UnitVector v3,
                             double c0, double eps, double theta);

// Recovery sequence of a piecewise-constant field on the lambda-grid:
// geodesic transition from the boundary datum towards the cell value at
// speed theta/eps, then projection to the discrete circle. Sites farther
// than pi*eps/theta from the cell boundary carry the projected cell value.
SpinField recovery_flat(const PcField& pc, DomainPtr domain, DiscreteCircle circle,
                        const RecoveryOptions& opts = {});

// Nested squares Q_k around one singularity, the layers L_k between them,
// and the dyadic cube families tiling each layer. All bounds are dyadic
// rationals, so cube membership tests are exact.
class DyadicDecomposition {
 public:
  struct CubeRef {
    int k;         // layer, -1 (outer gluing ring) .. k_eps
    long zx, zy;   // global cube indices at the layer pitch
  };

  static DyadicDecomposition build(Vec2 center, double lambda, double eta, double theta);

  Vec2 center() const { return center_; }
  double lambda() const { return lambda_; }
  double eta() const { return eta_; }
  int m() const { return m_; }
  int k_eps() const { return keps_; }

  // Half side of Q_k; k in [-2, k_eps]. Q_{-1} = Q(lambda), Q_{-2} adds one
  // lambda-ring around it.
  double half_side(int k) const;
  double pitch(int k) const;  // cube side of layer k, k in [-1, k_eps]

  bool in_square(Vec2 p) const;  // half-open Q(lambda)
  bool in_core(Vec2 p) const;    // closed Q_{k_eps - 1}

  std::optional<CubeRef> cube_at(Vec2 p) const;
  Vec2 cube_origin(const CubeRef& c) const;
  std::vector<CubeRef> layer_cubes(int k) const;

 private:
  DyadicDecomposition() = default;
  bool cube_in_layer(int k, long zx, long zy) const;
  Vec2 center_;
  double lambda_ = 0.0, eta_ = 0.0, theta_ = 0.0;
  int m_ = 0, keps_ = 0;
};

inline DyadicDecomposition dyadic_decomposition(Vec2 center, double lambda, double eta,
                                                double theta) {
  return DyadicDecomposition::build(center, lambda, eta, theta);
}

// Global recovery sequence for a map with unit-degree singularities on the
// lambda-lattice that equals the (possibly reflected) unit vortex near each
// of them: sector field in the innermost squares, geodesic interpolation on
// the dyadic layers, and the flat recovery of the midpoint-sampled map
// outside the squares. The two constructions agree exactly on the one-bond
// ring inside each square boundary.
SpinField recovery_with_vortices(const SingularMap& map, const VorticityMeasure& mu,
                                 double lambda, double eta, DomainPtr domain,
                                 DiscreteCircle circle, const RecoveryOptions& opts = {});

// Replaces one unit of the degree-d singularity of `map` at x1 (|d| >= 2) by
// a new singularity of degree sign(d) at x1 + tau*e1, multiplying by the
// corresponding vortex factors. Repeated application splits a degree-d
// point into |d| unit-degree points.
SingularMap split_degree(const SingularMap& map, Vec2 x1, double tau);

}  // namespace clockxy
