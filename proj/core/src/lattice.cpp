#include "clockxy/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace clockxy {

LatticeDomain::LatticeDomain(Shape shape, double epsilon) : shape_(shape), eps_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_domain: epsilon must be > 0");
  BBox box = shape.bbox();
  ix0_ = static_cast<int>(std::ceil(box.lo.x / epsilon)) - 1;
  iy0_ = static_cast<int>(std::ceil(box.lo.y / epsilon)) - 1;
  int ix1 = static_cast<int>(std::floor(box.hi.x / epsilon)) + 1;
  int iy1 = static_cast<int>(std::floor(box.hi.y / epsilon)) + 1;
  nx_ = ix1 - ix0_ + 1;
  ny_ = iy1 - iy0_ + 1;
  if (nx_ <= 0 || ny_ <= 0) throw std::invalid_argument("build_domain: empty index window");

  grid_.assign(static_cast<std::size_t>(nx_) * ny_, -1);
  for (int iy = iy0_; iy < iy0_ + ny_; ++iy) {
    for (int ix = ix0_; ix < ix0_ + nx_; ++ix) {
      Vec2 p{eps_ * ix, eps_ * iy};
      if (shape.contains(p)) {
        std::size_t cell = static_cast<std::size_t>(iy - iy0_) * nx_ + (ix - ix0_);
        grid_[cell] = static_cast<std::int32_t>(sites_.size());
        sites_.emplace_back(ix, iy);
      }
    }
  }
  if (sites_.empty()) throw std::invalid_argument("build_domain: no lattice site inside shape");

  for (std::int32_t id = 0; id < static_cast<std::int32_t>(sites_.size()); ++id) {
    auto [ix, iy] = sites_[id];
    int right = site_at(ix + 1, iy);
    if (right >= 0) bonds_.push_back({id, right, 0});
    int up = site_at(ix, iy + 1);
    if (up >= 0) bonds_.push_back({id, up, 1});
  }
}

int LatticeDomain::site_at(int ix, int iy) const {
  if (ix < ix0_ || ix >= ix0_ + nx_ || iy < iy0_ || iy >= iy0_ + ny_) return -1;
  return grid_[static_cast<std::size_t>(iy - iy0_) * nx_ + (ix - ix0_)];
}

DomainPtr build_domain(const Shape& shape, double epsilon) {
  return std::make_shared<const LatticeDomain>(shape, epsilon);
}

SpinField constant_field(DomainPtr domain, DiscreteCircle circle, int state) {
  SpinField f;
  f.domain = std::move(domain);
  f.circle = circle;
  f.states.assign(f.domain->site_count(), circle.wrap_state(state));
  return f;
}

SpinField sample_map(const SpinMapFn& map, DomainPtr domain, DiscreteCircle circle,
                     SampleMode mode) {
  SpinField f;
  f.domain = std::move(domain);
  f.circle = circle;
  f.states.resize(f.domain->site_count());
  double eps = f.domain->epsilon();
  for (int id = 0; id < f.domain->site_count(); ++id) {
    auto [ix, iy] = f.domain->site(id);
    Vec2 p = mode == SampleMode::at_site ? f.domain->position(id) : cell_center(eps, ix, iy);
    Vec2 v = map(p);
    f.states[id] = project_to_discrete(UnitVector::from_components(v.x, v.y), circle);
  }
  return f;
}

std::vector<JumpRecord> jump_set(const SpinField& field) {
  std::vector<JumpRecord> records;
  const auto& dom = *field.domain;
  for (const Bond& b : dom.bonds()) {
    int ka = field.states[b.a];
    int kb = field.states[b.b];
    if (ka == kb) continue;
    JumpRecord r;
    r.site_minus = b.a;
    r.site_plus = b.b;
    r.trace_minus = field.circle.state_vector(ka);
    r.trace_plus = field.circle.state_vector(kb);
    r.jump_length = field.circle.state_separation(ka, kb) * field.circle.theta;
    r.normal = b.axis == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    r.edge_measure = dom.epsilon();
    records.push_back(r);
  }
  return records;
}

double PcField::angle_at(int zx, int zy) const {
  if (!has_cell(zx, zy)) throw std::out_of_range("PcField: cell outside stored grid");
  return angle[static_cast<std::size_t>(zy - zy0) * nx + (zx - zx0)];
}

std::pair<int, int> PcField::cell_of(Vec2 p) const {
  return {static_cast<int>(std::floor(p.x / lambda)),
          static_cast<int>(std::floor(p.y / lambda))};
}

PcField pc_from_map(const SpinMapFn& map, double lambda, const BBox& cover) {
  if (!(lambda > 0.0)) throw std::invalid_argument("pc_from_map: lambda must be > 0");
  PcField pc;
  pc.lambda = lambda;
  pc.zx0 = static_cast<int>(std::floor(cover.lo.x / lambda));
  pc.zy0 = static_cast<int>(std::floor(cover.lo.y / lambda));
  int zx1 = static_cast<int>(std::floor(cover.hi.x / lambda));
  int zy1 = static_cast<int>(std::floor(cover.hi.y / lambda));
  pc.nx = zx1 - pc.zx0 + 1;
  pc.ny = zy1 - pc.zy0 + 1;
  pc.angle.resize(static_cast<std::size_t>(pc.nx) * pc.ny);
  for (int zy = pc.zy0; zy <= zy1; ++zy) {
    for (int zx = pc.zx0; zx <= zx1; ++zx) {
      Vec2 v = map(cell_center(lambda, zx, zy));
      double a = UnitVector::from_components(v.x, v.y).angle();
      pc.angle[static_cast<std::size_t>(zy - pc.zy0) * pc.nx + (zx - pc.zx0)] = a;
    }
  }
  return pc;
}

PcField pc_from_field(const SpinField& field) {
  const auto& dom = *field.domain;
  PcField pc;
  pc.lambda = dom.epsilon();
  pc.zx0 = dom.ix0();
  pc.zy0 = dom.iy0();
  pc.nx = dom.nx();
  pc.ny = dom.ny();
  pc.angle.assign(static_cast<std::size_t>(pc.nx) * pc.ny, 0.0);
  for (int id = 0; id < dom.site_count(); ++id) {
    auto [ix, iy] = dom.site(id);
    pc.angle[static_cast<std::size_t>(iy - pc.zy0) * pc.nx + (ix - pc.zx0)] =
        field.phase(id);
  }
  return pc;
}

}  // namespace clockxy
