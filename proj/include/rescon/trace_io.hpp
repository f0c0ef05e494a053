// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#ifndef RESCON_TRACE_IO_HPP
#define RESCON_TRACE_IO_HPP

#include <string>

#include "rescon/engine.hpp"

namespace rescon {

/// Renders the trace as CSV with columns
///   t, V, min_Vi, max_Vi, sum_phi, sum_S, sum_psi,
///   vi_iteration_ok, lemma2_identity_ok, lemma2_lower_ok, lemma3_ok,
///   lemma4_ok, contraction_ok, dist_<id>...
/// Numbers are written with round-trip precision, so the output is
/// byte-stable for a given trace.
std::string trace_to_csv(const Trace& trace);
void write_trace(const Trace& trace, const std::string& path);

/// Empirical per-round contraction factor: exp of the least-squares slope of
/// log V(t) over the rounds with V(t) > 1e-300. Throws when fewer than two
/// rounds qualify.
double fit_rate(const Trace& trace);

}  // namespace rescon

#endif  // RESCON_TRACE_IO_HPP
