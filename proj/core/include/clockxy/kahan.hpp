#pragma once

namespace clockxy {

// Compensated summation; energy sums subtract large logarithmic terms, so
// accumulation error must stay well below the regression tolerances.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  void merge(const KahanSum& other) {
    add(other.sum);
    add(-other.comp);
  }
  double value() const { return sum; }
};

}  // namespace clockxy
