// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/regularity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include <Eigen/Geometry>

#include "rescon/rng.hpp"

namespace rescon {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Containment tolerance for x_star membership and witness verification.
constexpr double kPointTol = 1e-9;
// A boundary is considered active at x_star when its slack is below this.
constexpr double kActiveTol = 1e-9;
// Flat boundaries (halfspace, box, polyhedron faces) block a direction only
// when the outward component clearly exceeds the sweep resolution.
constexpr double kFlatBlockTol = 2e-4;
// Curved boundaries (balls) block tangent directions as well.
constexpr double kStrictBlockTol = 1e-9;
// A witness must be meaningfully separated from x_star.
constexpr double kWitnessMinDist = 1e-6;

// An active boundary normal at x_star. `strict` marks curved boundaries,
// which exclude motion along tangent directions too.
struct Blocker {
  Eigen::VectorXd normal;  // unit outward normal
  bool strict = false;
};

struct BlockerSet {
  std::vector<Blocker> blockers;
  bool pinned = false;  // some set admits only x_star itself
};

void collect_halfspace_blockers(const Halfspace& hs, const Eigen::VectorXd& x_star,
                                std::vector<Blocker>& out) {
  const double norm = hs.a.norm();
  const double slack = (hs.b - hs.a.dot(x_star)) / norm;
  if (slack <= kActiveTol) out.push_back({hs.a / norm, false});
}

BlockerSet collect_blockers(std::span<const ConvexSet> sets,
                            const Eigen::VectorXd& x_star) {
  BlockerSet result;
  const int m = static_cast<int>(x_star.size());
  for (const auto& set : sets) {
    switch (set.kind()) {
      case ConvexSet::Kind::kHalfspace:
        collect_halfspace_blockers(set.as_halfspace(), x_star, result.blockers);
        break;
      case ConvexSet::Kind::kPolyhedron:
        for (const auto& face : set.as_polyhedron())
          collect_halfspace_blockers(face, x_star, result.blockers);
        break;
      case ConvexSet::Kind::kBox: {
        for (int c = 0; c < m; ++c) {
          if (x_star[c] - set.box_lower()[c] <= kActiveTol) {
            Eigen::VectorXd nrm = Eigen::VectorXd::Zero(m);
            nrm[c] = -1.0;
            result.blockers.push_back({std::move(nrm), false});
          }
          if (set.box_upper()[c] - x_star[c] <= kActiveTol) {
            Eigen::VectorXd nrm = Eigen::VectorXd::Zero(m);
            nrm[c] = 1.0;
            result.blockers.push_back({std::move(nrm), false});
          }
        }
        break;
      }
      case ConvexSet::Kind::kBall: {
        if (set.ball_radius() <= kActiveTol) {
          result.pinned = true;
          break;
        }
        const Eigen::VectorXd d = x_star - set.ball_center();
        const double dist_to_center = d.norm();
        if (dist_to_center >= set.ball_radius() - kActiveTol * (1.0 + set.ball_radius())) {
          if (dist_to_center > 0.0)
            result.blockers.push_back({d / dist_to_center, true});
          else
            result.pinned = true;  // zero-radius-like degenerate placement
        }
        break;
      }
      case ConvexSet::Kind::kSingleton:
        // Membership of x_star was already verified, so the set is {x_star}.
        result.pinned = true;
        break;
      case ConvexSet::Kind::kFullSpace:
        break;
    }
  }
  return result;
}

// Positive when the direction is excluded by some active boundary; candidates
// for escape directions minimize this.
double escape_margin(const std::vector<Blocker>& blockers, const Eigen::VectorXd& u) {
  double margin = -std::numeric_limits<double>::infinity();
  for (const auto& b : blockers) {
    const double dot = b.normal.dot(u);
    margin = std::max(margin, b.strict ? dot + kStrictBlockTol : dot - kFlatBlockTol);
  }
  return margin;
}

std::optional<Eigen::VectorXd> verify_witness(std::span<const ConvexSet> sets,
                                              const Eigen::VectorXd& x_star,
                                              const Eigen::VectorXd& direction) {
  double t = 1.0;
  while (t >= kWitnessMinDist) {
    const Eigen::VectorXd candidate = x_star + t * direction;
    bool inside = true;
    for (const auto& set : sets) {
      if (!set.contains(candidate, kPointTol)) {
        inside = false;
        break;
      }
    }
    if (inside) return candidate;
    t *= 0.3;
  }
  return std::nullopt;
}

std::vector<Eigen::VectorXd> coarse_directions_2d() {
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(360);
  for (int deg = 0; deg < 360; ++deg) {
    const double th = deg * kPi / 180.0;
    Eigen::VectorXd u(2);
    u << std::cos(th), std::sin(th);
    dirs.push_back(std::move(u));
  }
  return dirs;
}

Eigen::VectorXd refine_direction_2d(const std::vector<Blocker>& blockers,
                                    const Eigen::VectorXd& start) {
  const double base = std::atan2(start[1], start[0]);
  double best_margin = escape_margin(blockers, start);
  Eigen::VectorXd best = start;
  for (int i = -120; i <= 120; ++i) {
    const double th = base + i * (0.01 * kPi / 180.0);
    Eigen::VectorXd u(2);
    u << std::cos(th), std::sin(th);
    const double margin = escape_margin(blockers, u);
    if (margin < best_margin) {
      best_margin = margin;
      best = std::move(u);
    }
  }
  return best;
}

// Vertices of an icosahedron subdivided three times and pushed to the unit
// sphere: 642 reasonably uniform probe directions.
std::vector<Eigen::VectorXd> icosphere_directions() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int level = 0; level < 3; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d v = (verts[a] + verts[b]).normalized();
      verts.push_back(v);
      const int idx = static_cast<int>(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]);
      const int bc = mid(f[1], f[2]);
      const int ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(verts.size());
  for (const auto& v : verts) {
    Eigen::VectorXd u(3);
    u << v[0], v[1], v[2];
    dirs.push_back(std::move(u));
  }
  return dirs;
}

Eigen::VectorXd refine_direction_3d(const std::vector<Blocker>& blockers,
                                    const Eigen::VectorXd& start) {
  Eigen::VectorXd best = start;
  double best_margin = escape_margin(blockers, start);
  double step = 0.05;  // radians
  while (step > 2e-5) {
    // Tangent basis at the current best direction.
    Eigen::Vector3d u(best[0], best[1], best[2]);
    Eigen::Vector3d any = std::abs(u[0]) < 0.9 ? Eigen::Vector3d::UnitX()
                                               : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d t1 = u.cross(any).normalized();
    const Eigen::Vector3d t2 = u.cross(t1);
    bool improved = false;
    for (int i = 0; i < 8; ++i) {
      const double th = i * kPi / 4.0;
      const Eigen::Vector3d cand3 =
          (u + step * (std::cos(th) * t1 + std::sin(th) * t2)).normalized();
      Eigen::VectorXd cand(3);
      cand << cand3[0], cand3[1], cand3[2];
      const double margin = escape_margin(blockers, cand);
      if (margin < best_margin) {
        best_margin = margin;
        best = std::move(cand);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

SingletonCheck sweep_singleton_test(std::span<const ConvexSet> sets,
                                    const Eigen::VectorXd& x_star,
                                    const BlockerSet& blockers) {
  const int m = static_cast<int>(x_star.size());

  if (blockers.blockers.empty()) {
    // No active boundary at all; any direction escapes.
    for (int c = 0; c < m; ++c) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
        u[c] = sign;
        if (auto w = verify_witness(sets, x_star, u)) return {false, w};
      }
    }
    return {true, std::nullopt};
  }

  std::vector<Eigen::VectorXd> candidates;
  if (m == 1) {
    Eigen::VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    candidates = {plus, minus};
  } else if (m == 2) {
    std::vector<Eigen::VectorXd> coarse = coarse_directions_2d();
    std::sort(coarse.begin(), coarse.end(),
              [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                return escape_margin(blockers.blockers, a) <
                       escape_margin(blockers.blockers, b);
              });
    for (int i = 0; i < 4 && i < static_cast<int>(coarse.size()); ++i)
      candidates.push_back(refine_direction_2d(blockers.blockers, coarse[i]));
  } else {
    std::vector<Eigen::VectorXd> coarse = icosphere_directions();
    std::sort(coarse.begin(), coarse.end(),
              [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
                return escape_margin(blockers.blockers, a) <
                       escape_margin(blockers.blockers, b);
              });
    for (int i = 0; i < 4 && i < static_cast<int>(coarse.size()); ++i)
      candidates.push_back(refine_direction_3d(blockers.blockers, coarse[i]));
  }

  for (const auto& u : candidates) {
    if (escape_margin(blockers.blockers, u) > 0.0) continue;  // blocked
    if (auto w = verify_witness(sets, x_star, u)) return {false, w};
  }
  return {true, std::nullopt};
}

SingletonCheck sampling_singleton_test(std::span<const ConvexSet> sets,
                                       const Eigen::VectorXd& x_star) {
  const int m = static_cast<int>(x_star.size());
  SplitMix64 rng(mix_key(0xA11CEULL, static_cast<std::uint64_t>(m)));
  for (double radius : {1e-2, 1e-1, 1.0, 10.0}) {
    for (int p = 0; p < 4000; ++p) {
      const Eigen::VectorXd candidate = x_star + radius * unit_sphere_vector(rng, m);
      bool inside = true;
      for (const auto& set : sets) {
        if (!set.contains(candidate, kPointTol)) {
          inside = false;
          break;
        }
      }
      if (inside && (candidate - x_star).norm() >= kWitnessMinDist)
        return {false, candidate};
    }
  }
  return {true, std::nullopt};
}

double binomial_guarded(int h, int s) {
  // C(h, s) computed as a double; saturates rather than overflowing.
  s = std::min(s, h - s);
  double value = 1.0;
  for (int i = 0; i < s; ++i) {
    value *= static_cast<double>(h - i);
    value /= static_cast<double>(i + 1);
    if (value > 1e18) return value;
  }
  return value;
}

}  // namespace

SingletonCheck singleton_intersection(std::span<const ConvexSet> sets,
                                      const Eigen::VectorXd& x_star) {
  if (sets.empty()) throw std::invalid_argument("singleton_intersection: no sets");
  for (const auto& set : sets) {
    if (static_cast<int>(x_star.size()) != set.dimension())
      throw std::invalid_argument("singleton_intersection: dimension mismatch");
    if (!set.contains(x_star, kPointTol))
      throw std::runtime_error(
          "singleton_intersection: x_star is not contained in every set");
  }

  const BlockerSet blockers = collect_blockers(sets, x_star);
  if (blockers.pinned) return {true, std::nullopt};

  if (x_star.size() <= 3) return sweep_singleton_test(sets, x_star, blockers);
  return sampling_singleton_test(sets, x_star);
}

RedundancyResult check_k_redundancy(std::span<const ConvexSet> sets, int n, int k,
                                    const Eigen::VectorXd& x_star) {
  const int h = static_cast<int>(sets.size());
  if (h == 0) throw std::invalid_argument("check_k_redundancy: no sets");
  if (k < 0 || k > n) throw std::invalid_argument("check_k_redundancy: k out of range");

  const SingletonCheck full = singleton_intersection(sets, x_star);
  if (!full.is_singleton)
    throw std::runtime_error(
        "check_k_redundancy: the full family does not intersect in {x_star}");

  const int s = n - k;
  if (s <= 0) {
    // The empty subfamily qualifies and intersects in the whole space.
    Eigen::VectorXd w = x_star;
    w[0] += 1.0;
    return {false, RedundancyWitness{{}, std::move(w)}};
  }
  if (s >= h) return {true, std::nullopt};  // only the full family qualifies

  if (binomial_guarded(h, s) > kSubsetBudget)
    throw std::runtime_error("check_k_redundancy: subset enumeration budget exceeded");

  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  std::vector<ConvexSet> subset;
  for (;;) {
    subset.clear();
    for (int i : idx) subset.push_back(sets[i]);
    const SingletonCheck check = singleton_intersection(subset, x_star);
    if (!check.is_singleton)
      return {false, RedundancyWitness{idx, *check.witness}};

    // Next lexicographic combination.
    int pos = s - 1;
    while (pos >= 0 && idx[pos] == h - s + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
  }
  return {true, std::nullopt};
}

double estimate_mu(std::span<const ConvexSet> sets, int n, int k,
                   const Eigen::VectorXd& x_star, const MuSampler& sampler) {
  const int h = static_cast<int>(sets.size());
  if (h == 0) throw std::invalid_argument("estimate_mu: no sets");
  const int s = n - k;
  if (s < 1 || s > h)
    throw std::invalid_argument("estimate_mu: no qualifying subfamily size");
  // Size-one subfamilies compare a set's distance against itself.
  if (s == 1) return 1.0;

  const int m = static_cast<int>(x_star.size());
  SplitMix64 rng(mix_key(sampler.seed, 0x6d75ULL));
  double best = std::numeric_limits<double>::infinity();
  long valid = 0;
  std::vector<double> dists(h);
  for (double radius : sampler.radii) {
    for (int p = 0; p < sampler.points_per_radius; ++p) {
      const Eigen::VectorXd x = x_star + radius * unit_sphere_vector(rng, m);
      const double denom = (x - x_star).norm();
      if (denom <= 0.0) continue;
      for (int i = 0; i < h; ++i) dists[i] = sets[i].distance(x);
      // The cheapest size-s subfamily keeps the s smallest distances, so its
      // max is the s-th order statistic.
      std::nth_element(dists.begin(), dists.begin() + (s - 1), dists.end());
      best = std::min(best, dists[s - 1] / denom);
      ++valid;
    }
  }
  if (valid == 0) throw std::runtime_error("estimate_mu: sampler produced no valid points");
  if (best <= 1e-12)
    throw std::runtime_error(
        "estimate_mu: regularity ratio collapsed to zero (family not redundant?)");
  return best;
}

double alpha_upper_bound(double mu, int k, int f, int h) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("alpha_upper_bound: mu must be in (0, 1]");
  if (h < 1) throw std::invalid_argument("alpha_upper_bound: h must be >= 1");
  if (k < 0 || f < 0) throw std::invalid_argument("alpha_upper_bound: negative k or f");
  const double mu2 = mu * mu;
  const double numerator = mu2 * k - 2.0 * f * mu2 - 4.0 * f + mu2;
  return numerator / (4.0 * static_cast<double>(h) * h * h);
}

double rho_bound(double alpha, double mu, int k, int f, int h) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("rho_bound: mu must be in (0, 1]");
  if (h < 1) throw std::invalid_argument("rho_bound: h must be >= 1");
  if (k < 0 || f < 0) throw std::invalid_argument("rho_bound: negative k or f");
  const double mu2 = mu * mu;
  const double c = mu2 * k - 4.0 * f - 2.0 * f * mu2 + mu2;
  const double h3 = static_cast<double>(h) * h * h;
  return 1.0 - c * alpha + 4.0 * h3 * alpha * alpha;
}

}  // namespace rescon
