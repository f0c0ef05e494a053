// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_GEOMETRY_HPP
#define RESCON_GEOMETRY_HPP

#include <variant>
#include <vector>

#include <Eigen/Core>

namespace rescon {

/// Tolerance for iterative projections (successive-iterate change and residual
/// constraint violation).
inline constexpr double kProjectionTol = 1e-10;
inline constexpr int kDykstraMaxSweeps = 10000;

/// The halfspace {x | a^T x <= b} with a != 0.
struct Halfspace {
  Eigen::VectorXd a;
  double b = 0.0;
};

/// A closed convex constraint set with Euclidean projection and distance.
///
/// Halfspace, box, ball and singleton use closed-form projections. A
/// polyhedron (intersection of halfspaces) is projected with Dykstra's
/// alternating scheme, which converges to the exact Euclidean projection
/// onto the intersection, unlike plain cyclic projection.
class ConvexSet {
 public:
  enum class Kind { kHalfspace, kBox, kBall, kPolyhedron, kSingleton, kFullSpace };

  static ConvexSet halfspace(Eigen::VectorXd a, double b);
  static ConvexSet box(Eigen::VectorXd lower, Eigen::VectorXd upper);
  static ConvexSet ball(Eigen::VectorXd center, double radius);
  static ConvexSet polyhedron(std::vector<Halfspace> faces);
  static ConvexSet singleton(Eigen::VectorXd point);
  static ConvexSet full_space(int dim);

  Kind kind() const;
  int dimension() const;

  /// Euclidean projection of x onto the set. Throws std::invalid_argument on
  /// dimension mismatch and std::runtime_error when Dykstra fails to converge
  /// within the sweep budget (a likely-infeasible polyhedron).
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;

  /// ||x - project(x)||.
  double distance(const Eigen::VectorXd& x) const;

  /// distance(x) <= tol. Requires tol >= 0.
  bool contains(const Eigen::VectorXd& x, double tol) const;

  // Variant accessors; throw std::bad_variant_access if the kind differs.
  const Halfspace& as_halfspace() const;
  const std::vector<Halfspace>& as_polyhedron() const;
  const Eigen::VectorXd& singleton_point() const;
  const Eigen::VectorXd& ball_center() const;
  double ball_radius() const;
  const Eigen::VectorXd& box_lower() const;
  const Eigen::VectorXd& box_upper() const;

 private:
  struct BoxData {
    Eigen::VectorXd lower, upper;
  };
  struct BallData {
    Eigen::VectorXd center;
    double radius;
  };
  struct PolyhedronData {
    std::vector<Halfspace> faces;
  };
  struct SingletonData {
    Eigen::VectorXd point;
  };
  struct FullSpaceData {
    int dim;
  };

  using Rep = std::variant<Halfspace, BoxData, BallData, PolyhedronData,
                           SingletonData, FullSpaceData>;

  explicit ConvexSet(Rep rep) : rep_(std::move(rep)) {}

  void check_dimension(const Eigen::VectorXd& x) const;

  Rep rep_;
};

/// Projection onto a single halfspace: x - max(0, a^T x - b) a / ||a||^2.
Eigen::VectorXd project_halfspace(const Halfspace& hs, const Eigen::VectorXd& x);

}  // namespace rescon

#endif  // RESCON_GEOMETRY_HPP
