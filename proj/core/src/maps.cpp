#include "clockxy/maps.hpp"

#include <cmath>
#include <stdexcept>

namespace clockxy {

namespace {

Mat2 central_difference(const SpinMapFn& f, Vec2 p, double h) {
  Vec2 fx1 = f({p.x + h, p.y});
  Vec2 fx0 = f({p.x - h, p.y});
  Vec2 fy1 = f({p.x, p.y + h});
  Vec2 fy0 = f({p.x, p.y - h});
  double inv = 1.0 / (2.0 * h);
  return {(fx1.x - fx0.x) * inv, (fy1.x - fy0.x) * inv,
          (fx1.y - fx0.y) * inv, (fy1.y - fy0.y) * inv};
}

// Columnwise complex product rule: d(a*b) = da*b + a*db.
Mat2 product_gradient(Vec2 a, const Mat2& da, Vec2 b, const Mat2& db) {
  Vec2 c1 = complex_mul({da.a11, da.a21}, b) + complex_mul(a, {db.a11, db.a21});
  Vec2 c2 = complex_mul({da.a12, da.a22}, b) + complex_mul(a, {db.a12, db.a22});
  return {c1.x, c2.x, c1.y, c2.y};
}

}  // namespace

Vec2 complex_mul(Vec2 a, Vec2 b) { return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x}; }
Vec2 complex_conj(Vec2 a) { return {a.x, -a.y}; }

Mat2 SingularMap::gradient(Vec2 p) const {
  if (gradient_) return gradient_(p);
  return central_difference(value_, p, 1e-6);
}

SingularMap constant_map(UnitVector v) {
  Vec2 c = v.vec();
  return SingularMap([c](Vec2) { return c; }, [](Vec2) { return Mat2{}; }, {});
}

SingularMap vortex_map(Vec2 center, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("vortex_map: sign must be +/-1");
  auto value = [center, sign](Vec2 p) -> Vec2 {
    Vec2 d = p - center;
    double n = std::hypot(d.x, d.y);
    if (!(n > 0.0)) throw std::domain_error("vortex_map: evaluated at its singularity");
    Vec2 u{d.x / n, d.y / n};
    return sign > 0 ? u : complex_conj(u);
  };
  // grad(x/|x|) columns: d1 = (y^2, -xy)/|x|^3, d2 = (-xy, x^2)/|x|^3.
  auto grad = [center, sign](Vec2 p) -> Mat2 {
    Vec2 d = p - center;
    double n2 = d.x * d.x + d.y * d.y;
    if (!(n2 > 0.0)) throw std::domain_error("vortex_map: gradient at its singularity");
    double n3 = n2 * std::sqrt(n2);
    double s = static_cast<double>(sign);
    return {d.y * d.y / n3, -d.x * d.y / n3,
            s * (-d.x * d.y) / n3, s * (d.x * d.x) / n3};
  };
  return SingularMap(value, grad, {{center, sign}});
}

SingularMap vortex_power(Vec2 center, int n) {
  if (n == 0) return constant_map(UnitVector(0.0));
  int sign = n > 0 ? 1 : -1;
  SingularMap m = vortex_map(center, sign);
  SingularMap out = m;
  for (int k = 1; k < std::abs(n); ++k) out = complex_product(out, m);
  // collapse the singularity list to a single entry of the full degree
  return SingularMap(out.fn(), [out](Vec2 p) { return out.gradient(p); }, {{center, n}});
}

SingularMap complex_product(const SingularMap& a, const SingularMap& b) {
  auto av = a.fn();
  auto bv = b.fn();
  auto value = [av, bv](Vec2 p) { return complex_mul(av(p), bv(p)); };

  std::function<Mat2(Vec2)> grad;
  if (a.has_gradient() && b.has_gradient()) {
    SingularMap ac = a, bc = b;
    grad = [ac, bc](Vec2 p) {
      return product_gradient(ac(p), ac.gradient(p), bc(p), bc.gradient(p));
    };
  }

  std::vector<Singularity> sings = a.singularities();
  for (const auto& s : b.singularities()) {
    bool merged = false;
    for (auto& t : sings) {
      if (t.position.x == s.position.x && t.position.y == s.position.y) {
        t.degree += s.degree;
        merged = true;
        break;
      }
    }
    if (!merged) sings.push_back(s);
  }
  std::erase_if(sings, [](const Singularity& s) { return s.degree == 0; });
  return SingularMap(value, grad, std::move(sings));
}

SingularMap pin_vortex_form(const SingularMap& map, Vec2 center, int sign, double r_inner,
                            double r_outer) {
  if (!(0.0 < r_inner && r_inner < r_outer))
    throw std::invalid_argument("pin_vortex_form: need 0 < r_inner < r_outer");
  SingularMap base = map;
  SingularMap vf = vortex_map(center, sign);
  // Reference phase of the residual, taken just inside the pinned disk.
  Vec2 ref_rest = complex_mul(base({center.x + 0.5 * r_inner, center.y}),
                              complex_conj(vf({center.x + 0.5 * r_inner, center.y})));
  double alpha0 = std::atan2(ref_rest.y, ref_rest.x);

  auto value = [base, vf, center, r_inner, r_outer, alpha0](Vec2 p) -> Vec2 {
    double r = std::hypot(p.x - center.x, p.y - center.y);
    if (r >= r_outer) return base(p);
    Vec2 v = vf(p);
    if (r <= r_inner) return v;
    Vec2 rest = complex_mul(base(p), complex_conj(v));
    double alpha = alpha0 + wrap_psi(std::atan2(rest.y, rest.x) - alpha0);
    double t = (r - r_inner) / (r_outer - r_inner);
    double chi = t * t * (3.0 - 2.0 * t);
    return complex_mul(v, {std::cos(chi * alpha), std::sin(chi * alpha)});
  };
  return SingularMap(value, nullptr, map.singularities());
}

SingularMap rotate_target(const SingularMap& m, double alpha) {
  Vec2 r{std::cos(alpha), std::sin(alpha)};
  auto mv = m.fn();
  auto value = [mv, r](Vec2 p) { return complex_mul(r, mv(p)); };
  std::function<Mat2(Vec2)> grad;
  if (m.has_gradient()) {
    SingularMap mc = m;
    grad = [mc, r](Vec2 p) {
      Mat2 g = mc.gradient(p);
      Vec2 c1 = complex_mul(r, {g.a11, g.a21});
      Vec2 c2 = complex_mul(r, {g.a12, g.a22});
      return Mat2{c1.x, c2.x, c1.y, c2.y};
    };
  }
  return SingularMap(value, grad, m.singularities());
}

}  // namespace clockxy
