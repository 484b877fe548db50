#pragma once

#include <optional>

#include "clockxy/lattice.hpp"
#include "clockxy/maps.hpp"

namespace clockxy {

// Midpoint-rule quadrature on a grid with `refinement` cells per unit
// length; disks of radius `exclusion_radius` around the map's singularities
// are excluded. Overlapping disks are treated as their union.
struct QuadratureSpec {
  int refinement = 256;
  double exclusion_radius = 0.0;
};

// Parametric integrand on 2-vectors in the wedge basis
// (e1^e2, e1^E1, e1^E2, e2^E1, e2^E2, E1^E2):
//   Phi = sqrt(xi21^2 + xi22^2) + sqrt(xi11^2 + xi12^2).
// Convex and positively 1-homogeneous; on graph orientations it reproduces
// the anisotropic gradient norm |.|_{2,1}.
double phi_parametric(double xi21, double xi22, double xi11, double xi12,
                      double xi_0bar0 = 0.0, double xi_00bar = 0.0);

// integral over region minus exclusion disks of |grad u|_{2,1}.
double anisotropic_dirichlet(const SingularMap& map, const Shape& region,
                             const QuadratureSpec& quad);

// Jump functional of a piecewise-constant field: sum over grid sides of
// side_length * d_S1(u-, u+) * |nu|_1 (|nu|_1 = 1 for axis-aligned sides).
// The SpinField overload runs in exact state arithmetic and agrees with
// geodesic_bond_sum of the same configuration.
double jump_functional(const PcField& field, const std::optional<Shape>& region = std::nullopt);
double jump_functional(const SpinField& field, const std::optional<Shape>& region = std::nullopt);

// The Cantor-part term is identically zero for every map class this library
// constructs (smooth away from points, or piecewise constant); reported as a
// constant so result tables carry the full decomposition.
inline constexpr double kCantorPart = 0.0;

}  // namespace clockxy
