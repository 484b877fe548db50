#include "clockxy/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "clockxy/energy.hpp"
#include "clockxy/runtime.hpp"

namespace clockxy {

double ThetaRule::theta_for(double eps) const {
  switch (kind) {
    case Kind::proportional: return value * eps;
    case Kind::loglaw: return eps * std::pow(abs_log(eps), value);
    case Kind::fixed: return value;
  }
  return value;
}

std::string ThetaRule::tag() const {
  char buf[64];
  switch (kind) {
    case Kind::proportional: std::snprintf(buf, sizeof buf, "proportional(%g)", value); break;
    case Kind::loglaw: std::snprintf(buf, sizeof buf, "loglaw(%g)", value); break;
    case Kind::fixed: std::snprintf(buf, sizeof buf, "fixed(%g)", value); break;
  }
  return buf;
}

namespace {

struct ScenarioSetup {
  Shape domain_shape = Shape::square({0.0, 0.0}, 1.0);
  std::vector<Vec2> centers;  // vortex positions (empty for interfaces)
  std::vector<int> signs;
  double lambda = 0.0625;
  double eta = 0.0;
  double jump = 0.0;
  int M = 0;
};

ScenarioSetup plan_scenario(const SweepConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  ScenarioSetup s;
  switch (sc.kind) {
    case Scenario::Kind::interface_jump: {
      if (!(sc.jump > 0.0) || !(sc.jump <= kPi))
        throw std::invalid_argument("sweep: interface jump must lie in (0, pi]");
      if (!(sc.length > 0.0)) throw std::invalid_argument("sweep: interface length must be > 0");
      s.domain_shape = Shape::square({0.0, 0.0}, sc.length);
      s.lambda = cfg.lambda > 0.0 ? cfg.lambda : sc.length / 4.0;
      s.jump = sc.jump;
      s.M = 0;
      break;
    }
    case Scenario::Kind::vortex:
    case Scenario::Kind::combined: {
      int M = sc.kind == Scenario::Kind::combined ? 2 : sc.M;
      if (M < 1 || M > 4) throw std::invalid_argument("sweep: vortex scenarios support M in 1..4");
      s.domain_shape = Shape::square({-0.5, -0.5}, 1.0);
      static const Vec2 slots[4] = {{0.0, 0.0}, {0.25, 0.0}, {0.0, 0.25}, {0.0, -0.25}};
      static const Vec2 pair_slots[2] = {{-0.25, 0.0}, {0.25, 0.0}};
      if (M == 1) {
        s.centers = {slots[0]};
      } else if (M == 2) {
        s.centers = {pair_slots[0], pair_slots[1]};
      } else {
        s.centers.assign(slots, slots + M);
        s.centers[0] = {-0.25, 0.0};
        s.centers[1] = {0.25, 0.0};
      }
      s.signs = sc.signs;
      if (s.signs.empty()) {
        if (sc.kind == Scenario::Kind::combined || M == 2) s.signs = {1, -1};
        else s.signs.assign(M, 1);
        if (static_cast<int>(s.signs.size()) != M) s.signs.resize(M, 1);
      }
      if (static_cast<int>(s.signs.size()) != M)
        throw std::invalid_argument("sweep: signs must have one entry per vortex");
      for (int sg : s.signs)
        if (sg != 1 && sg != -1) throw std::invalid_argument("sweep: signs must be +/-1");
      s.lambda = cfg.lambda > 0.0 ? cfg.lambda : (M == 1 ? 0.0625 : 0.015625);
      s.eta = cfg.eta > 0.0 ? cfg.eta : (M == 1 ? 0.8 : 0.2);
      s.M = M;
      break;
    }
  }
  return s;
}

SingularMap scenario_map(const ScenarioSetup& s, double lambda, double eta, double theta) {
  SingularMap map = vortex_map(s.centers[0], s.signs[0]);
  for (std::size_t h = 1; h < s.centers.size(); ++h)
    map = complex_product(map, vortex_map(s.centers[h], s.signs[h]));
  if (s.centers.size() == 1) return map;

  // Multi-vortex products are not in the normal form the construction
  // assumes; pin the pure vortex over each dyadic square.
  DyadicDecomposition probe = DyadicDecomposition::build(s.centers[0], lambda, eta, theta);
  double circum = std::sqrt(2.0) * probe.half_side(-1);
  double min_gap = 1e30;
  for (std::size_t i = 0; i < s.centers.size(); ++i)
    for (std::size_t j = i + 1; j < s.centers.size(); ++j)
      min_gap = std::min(min_gap, norm(s.centers[i] - s.centers[j]));
  double r_outer = 0.45 * min_gap;
  double r_inner = std::min(1.05 * circum, 0.6 * r_outer);
  if (!(r_inner < r_outer) || !(circum <= r_inner))
    throw std::invalid_argument("sweep: vortices too close for the pinned normal form");
  for (std::size_t h = 0; h < s.centers.size(); ++h)
    map = pin_vortex_form(map, s.centers[h], s.signs[h], r_inner, r_outer);
  return map;
}

PcField interface_pc(const ScenarioSetup& s, const Shape& shape, double lambda) {
  BBox box = shape.bbox();
  box.lo = box.lo - Vec2{2.0 * lambda, 2.0 * lambda};
  box.hi = box.hi + Vec2{2.0 * lambda, 2.0 * lambda};
  double x_if = shape.p0().x + 0.5 * shape.extent();
  double right = wrap_angle(s.jump);
  PcField pc;
  pc.lambda = lambda;
  pc.zx0 = static_cast<int>(std::floor(box.lo.x / lambda));
  pc.zy0 = static_cast<int>(std::floor(box.lo.y / lambda));
  pc.nx = static_cast<int>(std::floor(box.hi.x / lambda)) - pc.zx0 + 1;
  pc.ny = static_cast<int>(std::floor(box.hi.y / lambda)) - pc.zy0 + 1;
  pc.angle.resize(static_cast<std::size_t>(pc.nx) * pc.ny);
  for (int zy = pc.zy0; zy < pc.zy0 + pc.ny; ++zy)
    for (int zx = pc.zx0; zx < pc.zx0 + pc.nx; ++zx)
      pc.angle[static_cast<std::size_t>(zy - pc.zy0) * pc.nx + (zx - pc.zx0)] =
          cell_center(lambda, zx, zy).x < x_if ? 0.0 : right;
  return pc;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  if (cfg.epsilon_list.empty()) throw std::invalid_argument("sweep: epsilon list is empty");
  for (std::size_t i = 1; i < cfg.epsilon_list.size(); ++i) {
    if (!(cfg.epsilon_list[i] < cfg.epsilon_list[i - 1]))
      throw std::invalid_argument("sweep: epsilon list must be strictly decreasing");
  }
  for (double eps : cfg.epsilon_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("sweep: epsilon must be > 0");
    double th = cfg.theta_rule.theta_for(eps);
    if (!(th > 0.0) || !(th < kPi))
      throw std::invalid_argument("sweep: derived theta must lie in (0, pi)");
  }

  runtime::set_thread_count(cfg.threads);
  ScenarioSetup setup = plan_scenario(cfg);

  // One plateau constant for the whole sweep: the largest feasible across
  // rows, capped at the construction default.
  double c0 = cfg.c0;
  if (c0 <= 0.0) {
    double cap = setup.centers.empty() ? kDefaultC0Flat : kDefaultC0Vortex;
    double feasible = 1e300;
    for (double eps : cfg.epsilon_list) {
      double th = DiscreteCircle::with_theta(cfg.theta_rule.theta_for(eps)).theta;
      feasible = std::min(feasible, setup.lambda * th / (4.0 * eps));
    }
    c0 = std::min(cap, 0.95 * feasible);
    if (!(c0 > 0.0)) c0 = 1e-3;
  }

  std::vector<SweepRecord> records;
  for (double eps : cfg.epsilon_list) {
    SweepRecord rec;
    rec.epsilon = eps;
    rec.regime_tag = cfg.theta_rule.tag();
    rec.M = setup.M;
    auto t0 = std::chrono::steady_clock::now();
    try {
      DiscreteCircle circle = DiscreteCircle::with_theta(cfg.theta_rule.theta_for(eps));
      rec.theta = circle.theta;
      DomainPtr domain = build_domain(setup.domain_shape, eps);

      RecoveryOptions opts;
      opts.c0 = c0;
      opts.max_neighbor_jump = cfg.delta;
      opts.check_delta = true;
      opts.strict_scales = false;

      SpinField field;
      VorticityMeasure target;
      target.domain = setup.domain_shape;
      if (setup.centers.empty()) {
        PcField pc = interface_pc(setup, setup.domain_shape, setup.lambda);
        field = recovery_flat(pc, domain, circle, opts);
      } else {
        SingularMap map = scenario_map(setup, setup.lambda, setup.eta, circle.theta);
        for (std::size_t h = 0; h < setup.centers.size(); ++h)
          target.atoms.push_back({setup.centers[h], setup.signs[h]});
        field = recovery_with_vortices(map, target, setup.lambda, setup.eta, domain, circle,
                                       opts);
      }

      rec.rescaled_energy = rescaled_energy(field, circle.theta);
      rec.excess_energy = excess_energy(field, circle.theta, setup.M);
      VorticityMeasure vm = vorticity_measure(field);
      rec.total_vorticity = vm.total_charge();
      rec.flat_distance_to_target = flat_distance(vm, target, setup.domain_shape);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    records.push_back(std::move(rec));
  }

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("sweep: cannot open '" + cfg.out_path + "'");
    write_sweep_csv(records, out, cfg.suppress_timing);
  }
  return records;
}

std::string sweep_csv_header() {
  return "epsilon,theta,regime_tag,rescaled_energy,excess_energy,M,total_vorticity,"
         "flat_distance,seconds";
}

void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out,
                     bool suppress_timing) {
  out << sweep_csv_header() << "\n";
  char buf[512];
  for (const auto& r : records) {
    if (!r.ok) {
      std::snprintf(buf, sizeof buf, "# error epsilon=%.17g %s", r.epsilon, r.error.c_str());
      out << buf << "\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g,%.17g,%d,%.17g,%.17g,%.3f",
                  r.epsilon, r.theta, r.regime_tag.c_str(), r.rescaled_energy,
                  r.excess_energy, r.M, r.total_vorticity, r.flat_distance_to_target,
                  suppress_timing ? 0.0 : r.wall_seconds);
    out << buf << "\n";
  }
}

}  // namespace clockxy
