#pragma once

#include <string>

namespace clockxy {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);

// 2x2 matrix with entries a(row, col); columns are the partial derivatives
// when the matrix holds a gradient (col j = d/dx_j).
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;
};

// |v|_1 = |v1| + |v2|
double norm_1(Vec2 v);
// |A|_{2,1}: Euclidean norms of the two columns, summed.
double norm_2_1(const Mat2& A);

struct BBox {
  Vec2 lo, hi;
};

// Planar domains used for lattices, localized energies and flat-norm
// boundaries. Squares and rectangles are half-open ([lo, hi) per axis),
// balls are closed; membership of boundary sites follows this convention.
class Shape {
 public:
  enum class Kind { square, ball, rectangle };

  static Shape square(Vec2 origin, double side);
  static Shape ball(Vec2 center, double radius);
  static Shape rectangle(Vec2 lo, Vec2 hi);

  Kind kind() const { return kind_; }
  bool contains(Vec2 p) const;
  // Distance from p to the boundary, positive inside, 0 outside.
  double boundary_distance(Vec2 p) const;
  BBox bbox() const;
  std::string describe() const;

  Vec2 p0() const { return p0_; }
  Vec2 p1() const { return p1_; }
  double extent() const { return r_; }  // side (square) or radius (ball)

  bool operator==(const Shape&) const = default;

 private:
  Shape(Kind k, Vec2 p0, Vec2 p1, double r) : kind_(k), p0_(p0), p1_(p1), r_(r) {}
  Kind kind_;
  Vec2 p0_, p1_;
  double r_ = 0.0;
};

}  // namespace clockxy
