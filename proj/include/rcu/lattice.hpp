#pragma once

#include <span>

namespace rcu {

inline constexpr double kLatticeTolerance = 1e-9;
inline constexpr int kLatticeMaxIterations = 64;

// Lattice structure {offset + i * span : i integer} of a finite value set.
struct LatticeInfo {
  bool is_lattice = false;
  double span = 0.0;    // h, maximal
  double offset = 0.0;  // gamma in [0, h)
  double tolerance_used = kLatticeTolerance;

  // A single distinct value within tol of 0: lattice with no usable span.
  bool degenerate() const { return is_lattice && span == 0.0; }
};

// Real-valued Euclidean reduction of the pairwise differences. The reduction
// stops once a remainder drops below tol; more than kLatticeMaxIterations
// steps, or a span below 1e3 * tol, means non-lattice.
//
// A set with one distinct value v is a lattice of span |v| and offset 0
// (degenerate, span 0, if |v| <= tol). Throws InputError on an empty list or tol <= 0.
LatticeInfo detect_lattice(std::span<const double> values, double tol = kLatticeTolerance);

}  // namespace rcu
