#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "clockxy/lattice.hpp"
#include "clockxy/maps.hpp"

namespace clockxy {

// Finite signed atomic measure sum_h d_h * delta_{x_h}; zero charges are
// never stored.
struct VorticityMeasure {
  struct Atom {
    Vec2 position;
    int charge;
  };
  std::vector<Atom> atoms;
  Shape domain = Shape::square({0.0, 0.0}, 1.0);

  double total_variation() const;
  int total_charge() const;
};

// Winding of the spin phase around the plaquette with bottom-left lattice
// corner (ix, iy), counterclockwise; always -1, 0 or +1. Computed in integer
// state arithmetic, so ties at phase difference pi follow wrap_psi exactly.
// Returns nullopt when a corner is missing from the domain.
std::optional<int> plaquette_vorticity(const SpinField& field, int ix, int iy);

// Atoms at eps*i + (eps, eps) for every plaquette of nonzero vorticity.
VorticityMeasure vorticity_measure(const SpinField& field);

// Flat distance between atomic measures supported in `domain`:
//   sup { int phi d(mu - nu) : Lip(phi) <= 1, |phi| <= 1, phi = 0 on the boundary }.
// Solved as a min-cost assignment where each unit of positive excess either
// transports to a unit of negative excess (cost min(|x-y|, 2)) or is
// absorbed (cost min(dist to boundary, 1)), and symmetrically.
double flat_distance(const VorticityMeasure& mu, const VorticityMeasure& nu,
                     const Shape& domain);

class resolution_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degree of `map` restricted to the circle of given center and radius,
// computed from `samples` equispaced points. Throws resolution_error when
// consecutive samples are ambiguous (phase gap of pi or more).
int winding_number(const SpinMapFn& map, Vec2 center, double radius, int samples);
inline int winding_number(const SingularMap& map, Vec2 center, double radius, int samples) {
  return winding_number(map.fn(), center, radius, samples);
}

}  // namespace clockxy
