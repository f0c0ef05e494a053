// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0
//
// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#ifndef RESCON_TESTS_ORACLES_HPP
#define RESCON_TESTS_ORACLES_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "rescon/geometry.hpp"
#include "rescon/rng.hpp"

namespace rescon::oracle {

/// Exact projection onto an intersection of halfspaces by enumerating active
/// sets: for every face subset, project onto the affine hull of those
/// boundaries and keep the closest feasible candidate. The true projection's
/// active set is among the subsets, so the minimum is exact.
inline Eigen::VectorXd qp_projection(const std::vector<Halfspace>& faces,
                                     const Eigen::VectorXd& x) {
  const int nf = static_cast<int>(faces.size());
  const int m = static_cast<int>(x.size());
  if (nf > 20) throw std::invalid_argument("qp_projection: too many faces");

  double best_dist = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;
  for (int mask = 0; mask < (1 << nf); ++mask) {
    Eigen::VectorXd y;
    if (mask == 0) {
      y = x;
    } else {
      const int w = __builtin_popcount(static_cast<unsigned>(mask));
      Eigen::MatrixXd A(w, m);
      Eigen::VectorXd b(w);
      int row = 0;
      for (int i = 0; i < nf; ++i) {
        if (!(mask & (1 << i))) continue;
        A.row(row) = faces[i].a.transpose();
        b[row] = faces[i].b;
        ++row;
      }
      // Minimum-norm correction onto the affine hull of the selected faces.
      const Eigen::VectorXd delta =
          A.completeOrthogonalDecomposition().solve(b - A * x);
      y = x + delta;
    }
    bool feasible = true;
    for (const auto& f : faces) {
      if ((f.a.dot(y) - f.b) / f.a.norm() > 1e-8) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const double dist = (y - x).norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = y;
    }
  }
  if (best.size() == 0)
    throw std::runtime_error("qp_projection: no feasible candidate (empty polyhedron?)");
  return best;
}

struct RandomPolyhedron {
  std::vector<Halfspace> faces;
  Eigen::VectorXd interior;
};

/// Feasible-by-construction random polyhedron: every face keeps positive
/// slack at a common interior point. Face normals are kept at least ~7deg
/// apart so the iterative projection converges well inside its sweep budget.
inline RandomPolyhedron random_polyhedron(SplitMix64& rng, int m, int max_faces) {
  RandomPolyhedron poly;
  poly.interior = 2.0 * rng.next_unit() * unit_sphere_vector(rng, m);
  const int nf = 1 + static_cast<int>(rng.next_u64() % max_faces);
  while (static_cast<int>(poly.faces.size()) < nf) {
    const Eigen::VectorXd a = unit_sphere_vector(rng, m);
    bool separated = true;
    for (const auto& f : poly.faces) {
      if (f.a.dot(a) > std::cos(0.12)) {
        separated = false;
        break;
      }
    }
    if (!separated) continue;
    const double slack = 0.05 + 1.45 * rng.next_unit();
    poly.faces.push_back({a, a.dot(poly.interior) + slack});
  }
  return poly;
}

/// 1-D interval intersection of scalar halfspaces: [lo, hi] with lo = -inf /
/// hi = +inf when unbounded. Independent route for redundancy checks on
/// one-dimensional families.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

inline Interval interval_of_1d_family(const std::vector<ConvexSet>& sets,
                                      const std::vector<int>& subset) {
  Interval iv;
  for (int idx : subset) {
    const Halfspace& hs = sets[idx].as_halfspace();
    const double a = hs.a[0];
    if (a > 0)
      iv.hi = std::min(iv.hi, hs.b / a);
    else
      iv.lo = std::max(iv.lo, hs.b / a);
  }
  return iv;
}

/// All size-s index subsets of {0..h-1}.
inline std::vector<std::vector<int>> all_subsets(int h, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    int pos = s - 1;
    while (pos >= 0 && idx[pos] == h - s + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

}  // namespace rescon::oracle

#endif  // RESCON_TESTS_ORACLES_HPP
