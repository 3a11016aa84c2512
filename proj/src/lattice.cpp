#include "rcu/lattice.hpp"

#include "rcu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rcu {

namespace {

// Distance from x to the nearest integer multiple of h.
double residual(double x, double h) { return std::abs(x - std::round(x / h) * h); }

}  // namespace

LatticeInfo detect_lattice(std::span<const double> values, double tol) {
  if (values.empty()) throw InputError("detect_lattice: empty value list");
  if (!(tol > 0.0)) throw InputError("detect_lattice: tolerance must be positive");

  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<double> distinct{v.front()};
  for (double x : v) {
    if (x - distinct.back() > tol) distinct.push_back(x);
  }

  LatticeInfo info;
  info.tolerance_used = tol;

  if (distinct.size() == 1) {
    info.is_lattice = true;
    info.span = std::abs(distinct.front()) <= tol ? 0.0 : std::abs(distinct.front());
    info.offset = 0.0;
    return info;
  }

  // Differences from the smallest value, largest first so the reduction
  // starts from the widest spread.
  std::vector<double> diffs;
  for (std::size_t i = 1; i < distinct.size(); ++i) diffs.push_back(distinct[i] - distinct.front());
  std::sort(diffs.rbegin(), diffs.rend());

  double span = diffs.front();
  int iterations = 0;
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    double a = span, b = diffs[i];
    if (a < b) std::swap(a, b);
    while (b > tol) {
      if (++iterations > kLatticeMaxIterations) return info;
      const double r = residual(a, b);
      a = b;
      b = r;
    }
    span = a;
    if (span < 1e3 * tol) return info;
  }

  for (double d : diffs) {
    if (residual(d, span) > tol) return info;
  }

  // Least-squares refinement of the span from the integer indices.
  double num = 0.0, den = 0.0;
  for (double d : diffs) {
    const double k = std::round(d / span);
    num += k * d;
    den += k * k;
  }
  span = num / den;

  double offset = std::fmod(distinct.front(), span);
  if (offset < 0.0) offset += span;
  if (span - offset <= tol) offset = 0.0;

  info.is_lattice = true;
  info.span = span;
  info.offset = offset;
  return info;
}

}  // namespace rcu
