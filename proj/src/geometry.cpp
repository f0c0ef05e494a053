// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescon {

namespace {

double face_violation(const Halfspace& hs, const Eigen::VectorXd& x) {
  // Signed distance beyond the boundary, in length units.
  return (hs.a.dot(x) - hs.b) / hs.a.norm();
}

}  // namespace

Eigen::VectorXd project_halfspace(const Halfspace& hs, const Eigen::VectorXd& x) {
  const double v = hs.a.dot(x) - hs.b;
  if (v <= 0.0) return x;
  return x - (v / hs.a.squaredNorm()) * hs.a;
}

ConvexSet ConvexSet::halfspace(Eigen::VectorXd a, double b) {
  if (a.size() == 0 || a.norm() == 0.0)
    throw std::invalid_argument("halfspace: normal vector must be nonzero");
  return ConvexSet(Halfspace{std::move(a), b});
}

ConvexSet ConvexSet::box(Eigen::VectorXd lower, Eigen::VectorXd upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("box: bound dimensions differ");
  if (lower.size() == 0) throw std::invalid_argument("box: empty bounds");
  if ((lower.array() > upper.array()).any())
    throw std::invalid_argument("box: lower bound exceeds upper bound");
  return ConvexSet(BoxData{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::ball(Eigen::VectorXd center, double radius) {
  if (center.size() == 0) throw std::invalid_argument("ball: empty center");
  if (radius < 0.0) throw std::invalid_argument("ball: negative radius");
  return ConvexSet(BallData{std::move(center), radius});
}

ConvexSet ConvexSet::polyhedron(std::vector<Halfspace> faces) {
  if (faces.empty()) throw std::invalid_argument("polyhedron: no faces");
  const Eigen::Index dim = faces.front().a.size();
  for (const auto& f : faces) {
    if (f.a.size() != dim)
      throw std::invalid_argument("polyhedron: inconsistent face dimensions");
    if (f.a.size() == 0 || f.a.norm() == 0.0)
      throw std::invalid_argument("polyhedron: zero face normal");
  }
  return ConvexSet(PolyhedronData{std::move(faces)});
}

ConvexSet ConvexSet::singleton(Eigen::VectorXd point) {
  if (point.size() == 0) throw std::invalid_argument("singleton: empty point");
  return ConvexSet(SingletonData{std::move(point)});
}

ConvexSet ConvexSet::full_space(int dim) {
  if (dim <= 0) throw std::invalid_argument("full_space: dimension must be positive");
  return ConvexSet(FullSpaceData{dim});
}

ConvexSet::Kind ConvexSet::kind() const {
  switch (rep_.index()) {
    case 0: return Kind::kHalfspace;
    case 1: return Kind::kBox;
    case 2: return Kind::kBall;
    case 3: return Kind::kPolyhedron;
    case 4: return Kind::kSingleton;
    default: return Kind::kFullSpace;
  }
}

int ConvexSet::dimension() const {
  switch (kind()) {
    case Kind::kHalfspace: return static_cast<int>(std::get<Halfspace>(rep_).a.size());
    case Kind::kBox: return static_cast<int>(std::get<BoxData>(rep_).lower.size());
    case Kind::kBall: return static_cast<int>(std::get<BallData>(rep_).center.size());
    case Kind::kPolyhedron:
      return static_cast<int>(std::get<PolyhedronData>(rep_).faces.front().a.size());
    case Kind::kSingleton:
      return static_cast<int>(std::get<SingletonData>(rep_).point.size());
    default: return std::get<FullSpaceData>(rep_).dim;
  }
}

void ConvexSet::check_dimension(const Eigen::VectorXd& x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw std::invalid_argument("point dimension " + std::to_string(x.size()) +
                                " does not match set dimension " +
                                std::to_string(dimension()));
}

Eigen::VectorXd ConvexSet::project(const Eigen::VectorXd& x) const {
  check_dimension(x);
  switch (kind()) {
    case Kind::kHalfspace:
      return project_halfspace(std::get<Halfspace>(rep_), x);
    case Kind::kBox: {
      const auto& b = std::get<BoxData>(rep_);
      return x.cwiseMax(b.lower).cwiseMin(b.upper);
    }
    case Kind::kBall: {
      const auto& b = std::get<BallData>(rep_);
      const Eigen::VectorXd d = x - b.center;
      const double n = d.norm();
      if (n <= b.radius) return x;
      return b.center + (b.radius / n) * d;
    }
    case Kind::kSingleton:
      return std::get<SingletonData>(rep_).point;
    case Kind::kFullSpace:
      return x;
    case Kind::kPolyhedron:
      break;
  }

  // Dykstra's alternating projections with per-face correction terms. The
  // corrections are what make the limit the true projection onto the
  // intersection rather than just some feasible point.
  const auto& faces = std::get<PolyhedronData>(rep_).faces;

  double worst = 0.0;
  for (const auto& f : faces) worst = std::max(worst, face_violation(f, x));
  if (worst <= 0.0) return x;

  const int p = static_cast<int>(faces.size());
  Eigen::VectorXd z = x;
  std::vector<Eigen::VectorXd> correction(p, Eigen::VectorXd::Zero(x.size()));
  for (int sweep = 0; sweep < kDykstraMaxSweeps; ++sweep) {
    // Stop on the summed change of the correction terms (Birgin & Raydan);
    // small iterate change alone can stall at a feasible non-projection.
    double correction_change_sq = 0.0;
    for (int i = 0; i < p; ++i) {
      const Eigen::VectorXd y = z + correction[i];
      z = project_halfspace(faces[i], y);
      const Eigen::VectorXd updated = y - z;
      correction_change_sq += (updated - correction[i]).squaredNorm();
      correction[i] = updated;
    }
    if (std::sqrt(correction_change_sq) <= kProjectionTol) {
      double residual = 0.0;
      for (const auto& f : faces) residual = std::max(residual, face_violation(f, z));
      if (residual <= kProjectionTol) return z;
    }
  }
  throw std::runtime_error(
      "polyhedron projection did not converge within " +
      std::to_string(kDykstraMaxSweeps) +
      " sweeps; the polyhedron is likely infeasible");
}

double ConvexSet::distance(const Eigen::VectorXd& x) const {
  return (x - project(x)).norm();
}

bool ConvexSet::contains(const Eigen::VectorXd& x, double tol) const {
  if (tol < 0.0) throw std::invalid_argument("contains: negative tolerance");
  return distance(x) <= tol;
}

const Halfspace& ConvexSet::as_halfspace() const { return std::get<Halfspace>(rep_); }

const std::vector<Halfspace>& ConvexSet::as_polyhedron() const {
  return std::get<PolyhedronData>(rep_).faces;
}

const Eigen::VectorXd& ConvexSet::singleton_point() const {
  return std::get<SingletonData>(rep_).point;
}

const Eigen::VectorXd& ConvexSet::ball_center() const {
  return std::get<BallData>(rep_).center;
}

double ConvexSet::ball_radius() const { return std::get<BallData>(rep_).radius; }

const Eigen::VectorXd& ConvexSet::box_lower() const {
  return std::get<BoxData>(rep_).lower;
}

const Eigen::VectorXd& ConvexSet::box_upper() const {
  return std::get<BoxData>(rep_).upper;
}

}  // namespace rescon
