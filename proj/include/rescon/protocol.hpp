// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_PROTOCOL_HPP
#define RESCON_PROTOCOL_HPP

#include <span>
#include <vector>

#include <Eigen/Core>

#include "rescon/geometry.hpp"

namespace rescon {

/// One normal agent: its id, current value, and local constraint set.
struct AgentState {
  int id = 0;
  Eigen::VectorXd x;
  ConvexSet constraint;
};

/// Result of the distance filter: `removed` holds exactly f sender ids (the
/// furthest values), `retained` the remaining n-1-f. Both are sorted
/// ascending.
struct FilterOutcome {
  std::vector<int> retained;
  std::vector<int> removed;
};

struct ReceivedValue {
  int sender = 0;
  Eigen::VectorXd value;
};

/// Distance filter: drops the f received values furthest (Euclidean) from
/// x_own. Ties are broken deterministically by removing in (distance
/// descending, sender id descending) order, so every retained distance is <=
/// every removed distance and the outcome is invariant under permutation of
/// the input. Throws when fewer than f+1 values are supplied.
FilterOutcome filter_received(const Eigen::VectorXd& x_own,
                              std::span<const ReceivedValue> received, int f);

/// Consensus step followed by projection onto the agent's own set:
/// x <- P[x + alpha * sum_j (v_j - x)].
AgentState local_update(const AgentState& state,
                        std::span<const Eigen::VectorXd> retained_values,
                        double alpha);

}  // namespace rescon

#endif  // RESCON_PROTOCOL_HPP
