// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace rescon {

FilterOutcome filter_received(const Eigen::VectorXd& x_own,
                              std::span<const ReceivedValue> received, int f) {
  if (f < 0) throw std::invalid_argument("filter_received: negative f");
  const int count = static_cast<int>(received.size());
  if (count <= f)
    throw std::invalid_argument("filter_received: cannot retain anyone after removing f");

  struct Entry {
    double dist;
    int sender;
  };
  std::vector<Entry> entries;
  entries.reserve(count);
  for (const auto& r : received) {
    if (r.value.size() != x_own.size())
      throw std::invalid_argument("filter_received: message dimension mismatch");
    entries.push_back({(x_own - r.value).norm(), r.sender});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    return a.sender > b.sender;
  });

  FilterOutcome out;
  out.removed.reserve(f);
  out.retained.reserve(count - f);
  for (int i = 0; i < f; ++i) out.removed.push_back(entries[i].sender);
  for (int i = f; i < count; ++i) out.retained.push_back(entries[i].sender);
  std::sort(out.removed.begin(), out.removed.end());
  std::sort(out.retained.begin(), out.retained.end());
  return out;
}

AgentState local_update(const AgentState& state,
                        std::span<const Eigen::VectorXd> retained_values,
                        double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("local_update: alpha must be positive");
  Eigen::VectorXd pull = Eigen::VectorXd::Zero(state.x.size());
  for (const auto& v : retained_values) {
    if (v.size() != state.x.size())
      throw std::invalid_argument("local_update: value dimension mismatch");
    pull += v - state.x;
  }
  AgentState next = state;
  next.x = state.constraint.project(state.x + alpha * pull);
  return next;
}

}  // namespace rescon
