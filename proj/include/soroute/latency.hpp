#pragma once

#include <cmath>
#include <stdexcept>

namespace soroute {

enum class LatencyKind { Constant, Affine, Bpr };

// Link travel-time function l(x) for link flow x >= 0.
//
//   Constant: l(x) = t0
//   Affine:   l(x) = t0 + slope * x
//   Bpr:      l(x) = t0 * (1 + alpha * (x / capacity)^beta)
//
// marginal(x) is the system marginal cost d/dx [x * l(x)] = l(x) + x * l'(x).
struct LatencyFunction {
  LatencyKind kind = LatencyKind::Constant;
  double t0 = 0.0;
  double slope = 0.0;     // Affine only
  double capacity = 1.0;  // Bpr only
  double alpha = 0.15;    // Bpr only
  double beta = 4.0;      // Bpr only

  static LatencyFunction constant(double t0) {
    LatencyFunction f;
    f.kind = LatencyKind::Constant;
    f.t0 = t0;
    return f;
  }

  static LatencyFunction affine(double t0, double slope) {
    LatencyFunction f;
    f.kind = LatencyKind::Affine;
    f.t0 = t0;
    f.slope = slope;
    return f;
  }

  static LatencyFunction bpr(double t0, double capacity, double alpha = 0.15,
                             double beta = 4.0) {
    LatencyFunction f;
    f.kind = LatencyKind::Bpr;
    f.t0 = t0;
    f.capacity = capacity;
    f.alpha = alpha;
    f.beta = beta;
    return f;
  }

  double value(double x) const {
    check_flow(x);
    switch (kind) {
      case LatencyKind::Constant:
        return t0;
      case LatencyKind::Affine:
        return t0 + slope * x;
      case LatencyKind::Bpr:
        return t0 * (1.0 + alpha * std::pow(x / capacity, beta));
    }
    return t0;
  }

  double deriv(double x) const {
    check_flow(x);
    switch (kind) {
      case LatencyKind::Constant:
        return 0.0;
      case LatencyKind::Affine:
        return slope;
      case LatencyKind::Bpr:
        if (x == 0.0 && beta > 1.0) return 0.0;
        return t0 * alpha * beta * std::pow(x / capacity, beta - 1.0) / capacity;
    }
    return 0.0;
  }

  double second_deriv(double x) const {
    check_flow(x);
    switch (kind) {
      case LatencyKind::Constant:
      case LatencyKind::Affine:
        return 0.0;
      case LatencyKind::Bpr:
        if (x == 0.0 && beta > 2.0) return 0.0;
        return t0 * alpha * beta * (beta - 1.0) *
               std::pow(x / capacity, beta - 2.0) / (capacity * capacity);
    }
    return 0.0;
  }

  double marginal(double x) const { return value(x) + x * deriv(x); }

  // d/dx marginal(x) = 2 l'(x) + x l''(x); used by Newton steps on the
  // marginal-cost metric.
  double marginal_deriv(double x) const {
    return 2.0 * deriv(x) + x * second_deriv(x);
  }

  bool strictly_increasing() const {
    switch (kind) {
      case LatencyKind::Constant:
        return false;
      case LatencyKind::Affine:
        return slope > 0.0;
      case LatencyKind::Bpr:
        return t0 > 0.0 && alpha > 0.0 && beta > 0.0;
    }
    return false;
  }

 private:
  static void check_flow(double x) {
    if (!(x >= 0.0))
      throw std::domain_error("latency evaluated at negative flow");
  }
};

inline double latency(const LatencyFunction& f, double x) { return f.value(x); }
inline double marginal_cost(const LatencyFunction& f, double x) {
  return f.marginal(x);
}

}  // namespace soroute
