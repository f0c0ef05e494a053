// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_REGULARITY_HPP
#define RESCON_REGULARITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rescon/geometry.hpp"

namespace rescon {

/// A certificate that some size-(n-k) subfamily has an intersection strictly
/// larger than {x_star}: `subset` holds indices into the normal-agent set
/// list, `point` lies in every listed set but away from x_star.
struct RedundancyWitness {
  std::vector<int> subset;
  Eigen::VectorXd point;
};

struct RedundancyResult {
  bool redundant = false;
  std::optional<RedundancyWitness> witness;
};

/// Result of testing whether the intersection of a family of sets is exactly
/// {x_star}. On failure carries a point other than x_star inside the
/// intersection (within tolerance).
struct SingletonCheck {
  bool is_singleton = false;
  std::optional<Eigen::VectorXd> witness;
};

/// Decides whether the sets intersect only at x_star. Every set must contain
/// x_star (throws otherwise). For dimensions <= 3 the test sweeps unit
/// directions against the active boundary normals at x_star (1-D: both signs;
/// 2-D: 1-degree grid refined to 0.01 degrees near the minimum margin; 3-D:
/// icosphere vertices with local refinement); an escape direction is accepted
/// only if an actual interior point along it verifies against every set. For
/// higher dimensions the test falls back to rejection sampling near x_star.
SingletonCheck singleton_intersection(std::span<const ConvexSet> sets,
                                      const Eigen::VectorXd& x_star);

/// Redundancy check over a family of `h` normal-agent sets in a network of
/// `n` agents: true iff every subfamily of size >= n-k still intersects in
/// exactly {x_star}. Verified by enumerating subsets of size exactly n-k
/// (supersets follow by monotonicity). Throws when C(h, n-k) exceeds the
/// enumeration budget or when the full family's intersection is not {x_star}.
RedundancyResult check_k_redundancy(std::span<const ConvexSet> sets, int n, int k,
                                    const Eigen::VectorXd& x_star);

/// Enumeration budget for check_k_redundancy.
inline constexpr double kSubsetBudget = 5e6;

/// Randomized point source for estimate_mu: `points_per_radius` directions
/// uniform on the unit sphere, probed at each radius around x_star.
struct MuSampler {
  std::uint64_t seed = 0;
  int points_per_radius = 10000;
  std::vector<double> radii{0.01, 1.0, 100.0};
};

/// Upper estimate of the regularity constant: the minimum over sampled points
/// x != x_star and over all subfamilies of size n-k of
///   max_{i in S} dist(x, X_i) / ||x - x_star||.
/// The inner minimum over subfamilies equals the (n-k)-th smallest of the h
/// per-set distances, so no subsets are materialized. Requires the family to
/// be k-redundant with singleton intersection {x_star} (caller-checked); the
/// returned value only upper-bounds the true constant, so downstream users
/// apply a safety factor before relying on it.
double estimate_mu(std::span<const ConvexSet> sets, int n, int k,
                   const Eigen::VectorXd& x_star, const MuSampler& sampler);

/// Step-size bound (mu^2 k - 2 f mu^2 - 4 f + mu^2) / (4 h^3); positive
/// exactly when k > 4 f / mu^2 + 2 f - 1. A negative return signals
/// infeasible parameters, which the caller checks.
double alpha_upper_bound(double mu, int k, int f, int h);

/// Per-round contraction factor 1 - (mu^2 k - 4 f - 2 f mu^2 + mu^2) alpha
/// + 4 h^3 alpha^2; lies in (0,1) for alpha strictly between zero and
/// alpha_upper_bound, and is >= 1 outside that range.
double rho_bound(double alpha, double mu, int k, int f, int h);

/// Summary of the set-family analysis for one scenario.
struct RegularityReport {
  int k = 0;
  int f = 0;
  int h = 0;
  bool redundancy_checked = false;
  bool redundant = false;
  std::string redundancy_note;
  double mu_estimate = 0.0;  // raw estimate or configured exact value
  bool mu_exact = false;     // true when mu came from the scenario, not sampling
  double mu_used = 0.0;      // value fed into the bounds (safety factor applied)
  double alpha_bound = 0.0;
  bool feasible = false;
  std::optional<RedundancyWitness> witness;

  double rho(double alpha) const { return rho_bound(alpha, mu_used, k, f, h); }
};

}  // namespace rescon

#endif  // RESCON_REGULARITY_HPP
