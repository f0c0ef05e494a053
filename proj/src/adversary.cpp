// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/adversary.hpp"

#include <stdexcept>

#include "rescon/rng.hpp"

namespace rescon {

AdversaryModel AdversaryModel::echo_fixed_point(Eigen::VectorXd target) {
  if (target.size() == 0)
    throw std::invalid_argument("echo_fixed_point: empty target");
  AdversaryModel a;
  a.strategy_ = Strategy::kEchoFixedPoint;
  a.target_ = std::move(target);
  return a;
}

AdversaryModel AdversaryModel::mirror_push(double offset_scale, Eigen::VectorXd x_star) {
  if (offset_scale < 0.0)
    throw std::invalid_argument("mirror_push: negative offset scale");
  if (x_star.size() == 0)
    throw std::invalid_argument("mirror_push: empty x_star");
  AdversaryModel a;
  a.strategy_ = Strategy::kMirrorPush;
  a.offset_scale_ = offset_scale;
  a.x_star_ = std::move(x_star);
  return a;
}

AdversaryModel AdversaryModel::random_gaussian(double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("random_gaussian: negative sigma");
  AdversaryModel a;
  a.strategy_ = Strategy::kRandomGaussian;
  a.sigma_ = sigma;
  a.seed_ = seed;
  return a;
}

Eigen::VectorXd AdversaryModel::message(long t, int sender, int receiver,
                                        std::span<const AgentState> normals) const {
  switch (strategy_) {
    case Strategy::kEchoFixedPoint:
      return target_;

    case Strategy::kMirrorPush: {
      const AgentState* state = nullptr;
      for (const auto& s : normals) {
        if (s.id == receiver) {
          state = &s;
          break;
        }
      }
      if (state == nullptr)
        throw std::invalid_argument("mirror_push: receiver is not a normal agent");
      const Eigen::VectorXd d = state->x - x_star_;
      const double n = d.norm();
      Eigen::VectorXd u;
      if (n > 0.0) {
        u = d / n;
      } else {
        u = Eigen::VectorXd::Zero(x_star_.size());
        u[0] = 1.0;
      }
      return state->x + offset_scale_ * u;
    }

    case Strategy::kRandomGaussian: {
      if (normals.empty())
        throw std::invalid_argument("random_gaussian: empty snapshot");
      const int m = static_cast<int>(normals.front().x.size());
      Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
      for (const auto& s : normals) mean += s.x;  // snapshot order is fixed
      mean /= static_cast<double>(normals.size());
      std::uint64_t key = mix_key(seed_, static_cast<std::uint64_t>(t));
      key = mix_key(key, static_cast<std::uint64_t>(sender));
      key = mix_key(key, static_cast<std::uint64_t>(receiver));
      SplitMix64 rng(key);
      return mean + sigma_ * gaussian_vector(rng, m);
    }
  }
  throw std::logic_error("unreachable adversary strategy");
}

}  // namespace rescon
