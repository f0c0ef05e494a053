// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_ADVERSARY_HPP
#define RESCON_ADVERSARY_HPP

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "rescon/protocol.hpp"

namespace rescon {

/// Byzantine message source. An adversary is omniscient (it sees the full
/// snapshot of normal states for the round) and rushing (it acts on the
/// current round), and may send conflicting values to different receivers.
/// Message generation is a pure function of (strategy, round, sender,
/// receiver, snapshot), so runs are reproducible and parallelizable.
class AdversaryModel {
 public:
  enum class Strategy { kEchoFixedPoint, kMirrorPush, kRandomGaussian };

  /// Every Byzantine agent sends exactly `target` to every receiver, every
  /// round.
  static AdversaryModel echo_fixed_point(Eigen::VectorXd target);

  /// Sends receiver i the value x_i + offset_scale * u_i where u_i points
  /// from x_star toward x_i (a fixed coordinate direction when x_i == x_star):
  /// a per-receiver pull away from the consensus target that mimics the
  /// receiver's own value and therefore tends to evade the distance filter.
  static AdversaryModel mirror_push(double offset_scale, Eigen::VectorXd x_star);

  /// Sends draws from an isotropic Gaussian centered at the mean normal
  /// state, deterministic in (seed, round, sender, receiver).
  static AdversaryModel random_gaussian(double sigma, std::uint64_t seed);

  Strategy strategy() const { return strategy_; }

  /// Value sent by Byzantine agent `sender` to normal agent `receiver` at
  /// round `t`. `normals` is the round-t snapshot of all normal states.
  Eigen::VectorXd message(long t, int sender, int receiver,
                          std::span<const AgentState> normals) const;

 private:
  AdversaryModel() = default;

  Strategy strategy_ = Strategy::kEchoFixedPoint;
  Eigen::VectorXd target_;
  Eigen::VectorXd x_star_;
  double offset_scale_ = 0.0;
  double sigma_ = 0.0;
  std::uint64_t seed_ = 0;
};

}  // namespace rescon

#endif  // RESCON_ADVERSARY_HPP
