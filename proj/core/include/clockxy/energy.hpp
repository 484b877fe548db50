#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "clockxy/lattice.hpp"

namespace clockxy {

struct EnergyBreakdown {
  double xy_total = 0.0;     // sum of eps^2 |u_i - u_j|^2 over unordered bonds
  double per_bond_max = 0.0; // largest single-bond |u_i - u_j|^2
  std::int64_t bond_count = 0;
  std::string region;
};

// XY energy referred to its minimum. When `region` is given, only bonds with
// both endpoints inside it count (cross-region bonds are excluded).
EnergyBreakdown xy_energy(const SpinField& field,
                          const std::optional<Shape>& region = std::nullopt);

// |log eps| in the natural-log convention used throughout.
inline double abs_log(double eps) { return -std::log(eps); }

double rescaled_energy(const SpinField& field, double theta,
                       const std::optional<Shape>& region = std::nullopt);
double rescaled_energy(const SpinField& field);

// Rescaled energy minus the canonical cost 2*pi*M*|log eps|*eps/theta of M
// unit vortices; may be negative.
double excess_energy(const SpinField& field, double theta, int M);

// Sum of eps * d_S1(u_i, u_j) over unordered bonds; distances are exact
// multiples of theta.
double geodesic_bond_sum(const SpinField& field,
                         const std::optional<Shape>& region = std::nullopt);

// (2 sin(theta/2)/theta) * sum eps |u_i - u_j|; bounds rescaled_energy from
// below bond by bond.
double bv_lower_bound(const SpinField& field,
                      const std::optional<Shape>& region = std::nullopt);

}  // namespace clockxy
