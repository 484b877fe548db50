#include "clockxy/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "clockxy/circle.hpp"

namespace clockxy {

double VorticityMeasure::total_variation() const {
  double tv = 0.0;
  for (const auto& a : atoms) tv += std::abs(a.charge);
  return tv;
}

int VorticityMeasure::total_charge() const {
  int q = 0;
  for (const auto& a : atoms) q += a.charge;
  return q;
}

std::optional<int> plaquette_vorticity(const SpinField& field, int ix, int iy) {
  const auto& dom = *field.domain;
  int s00 = dom.site_at(ix, iy);
  int s10 = dom.site_at(ix + 1, iy);
  int s11 = dom.site_at(ix + 1, iy + 1);
  int s01 = dom.site_at(ix, iy + 1);
  if (s00 < 0 || s10 < 0 || s11 < 0 || s01 < 0) return std::nullopt;

  int n = field.circle.n_states;
  long k00 = field.states[s00], k10 = field.states[s10];
  long k11 = field.states[s11], k01 = field.states[s01];
  long circulation = fold_state_difference(k10 - k00, n) +
                     fold_state_difference(k11 - k10, n) +
                     fold_state_difference(k01 - k11, n) +
                     fold_state_difference(k00 - k01, n);
  // circulation is a multiple of n by construction
  return static_cast<int>(circulation / n);
}

VorticityMeasure vorticity_measure(const SpinField& field) {
  const auto& dom = *field.domain;
  VorticityMeasure mu;
  mu.domain = dom.shape();
  double eps = dom.epsilon();
  for (int id = 0; id < dom.site_count(); ++id) {
    auto [ix, iy] = dom.site(id);
    auto d = plaquette_vorticity(field, ix, iy);
    if (d && *d != 0) {
      mu.atoms.push_back({{eps * ix + eps, eps * iy + eps}, *d});
    }
  }
  return mu;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hungarian algorithm with potentials, O(n^3); cost must be a square matrix.
double min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  int n = static_cast<int>(cost.size());
  if (n == 0) return 0.0;
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[col 1..n] = row
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, false);
    std::vector<int> way(n + 1, 0);
    do {
      used[j0] = true;
      int i0 = match[j0], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += cost[match[j] - 1][j - 1];
  return total;
}

struct Key {
  double x, y;
  bool operator<(const Key& o) const { return x < o.x || (x == o.x && y < o.y); }
};

}  // namespace

double flat_distance(const VorticityMeasure& mu, const VorticityMeasure& nu,
                     const Shape& domain) {
  // Net excess by exact position; atoms at identical positions cancel.
  std::map<Key, int> net;
  for (const auto& a : mu.atoms) net[{a.position.x, a.position.y}] += a.charge;
  for (const auto& a : nu.atoms) net[{a.position.x, a.position.y}] -= a.charge;

  std::vector<Vec2> pos, neg;
  for (const auto& [k, q] : net) {
    for (int c = 0; c < std::abs(q); ++c) {
      if (q > 0) pos.push_back({k.x, k.y});
      else if (q < 0) neg.push_back({k.x, k.y});
    }
  }
  std::size_t P = pos.size(), N = neg.size();
  if (P + N == 0) return 0.0;

  auto absorb = [&](Vec2 p) { return std::min(domain.boundary_distance(p), 1.0); };

  // Square matrix: rows = positives then negative-dummies, cols = negatives
  // then positive-dummies. Dummy x dummy pairs are free.
  std::size_t n = P + N;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < N; ++j) cost[i][j] = std::min(norm(pos[i] - neg[j]), 2.0);
    cost[i][N + i] = absorb(pos[i]);
  }
  for (std::size_t j = 0; j < N; ++j) {
    cost[P + j][j] = absorb(neg[j]);
    for (std::size_t i = 0; i < P; ++i) cost[P + j][N + i] = 0.0;
  }
  return min_cost_assignment(cost);
}

int winding_number(const SpinMapFn& map, Vec2 center, double radius, int samples) {
  if (samples < 3) throw std::invalid_argument("winding_number: need at least 3 samples");
  if (!(radius > 0.0)) throw std::invalid_argument("winding_number: radius must be > 0");

  std::vector<double> phase(samples);
  for (int k = 0; k < samples; ++k) {
    double t = kTwoPi * k / samples;
    Vec2 p{center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
    Vec2 v = map(p);
    phase[k] = std::atan2(v.y, v.x);
  }
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    double d = wrap_psi(phase[(k + 1) % samples] - phase[k]);
    if (std::abs(d) >= kPi - 1e-9)
      throw resolution_error("winding_number: consecutive samples differ by >= pi; raise samples");
    total += d;
  }
  double w = total / kTwoPi;
  long rounded = std::lround(w);
  if (std::abs(w - rounded) > 1e-6)
    throw resolution_error("winding_number: circulation did not close to an integer");
  return static_cast<int>(rounded);
}

}  // namespace clockxy
