#include "clockxy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace clockxy {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double norm_1(Vec2 v) { return std::abs(v.x) + std::abs(v.y); }

double norm_2_1(const Mat2& A) {
  return std::hypot(A.a11, A.a21) + std::hypot(A.a12, A.a22);
}

Shape Shape::square(Vec2 origin, double side) {
  if (!(side > 0.0)) throw std::invalid_argument("Shape::square: side must be > 0");
  return Shape(Kind::square, origin, {origin.x + side, origin.y + side}, side);
}

Shape Shape::ball(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("Shape::ball: radius must be > 0");
  return Shape(Kind::ball, center, center, radius);
}

Shape Shape::rectangle(Vec2 lo, Vec2 hi) {
  if (!(hi.x > lo.x) || !(hi.y > lo.y))
    throw std::invalid_argument("Shape::rectangle: hi must exceed lo in both axes");
  return Shape(Kind::rectangle, lo, hi, 0.0);
}

bool Shape::contains(Vec2 p) const {
  switch (kind_) {
    case Kind::square:
    case Kind::rectangle:
      return p.x >= p0_.x && p.x < p1_.x && p.y >= p0_.y && p.y < p1_.y;
    case Kind::ball:
      return norm(p - p0_) <= r_;
  }
  return false;
}

double Shape::boundary_distance(Vec2 p) const {
  double d = 0.0;
  switch (kind_) {
    case Kind::square:
    case Kind::rectangle:
      d = std::min(std::min(p.x - p0_.x, p1_.x - p.x),
                   std::min(p.y - p0_.y, p1_.y - p.y));
      break;
    case Kind::ball:
      d = r_ - norm(p - p0_);
      break;
  }
  return std::max(d, 0.0);
}

BBox Shape::bbox() const {
  if (kind_ == Kind::ball)
    return {{p0_.x - r_, p0_.y - r_}, {p0_.x + r_, p0_.y + r_}};
  return {p0_, p1_};
}

std::string Shape::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::square:
      os << "square(" << p0_.x << "," << p0_.y << ";" << r_ << ")";
      break;
    case Kind::ball:
      os << "ball(" << p0_.x << "," << p0_.y << ";" << r_ << ")";
      break;
    case Kind::rectangle:
      os << "rect(" << p0_.x << "," << p0_.y << ";" << p1_.x << "," << p1_.y << ")";
      break;
  }
  return os.str();
}

}  // namespace clockxy
