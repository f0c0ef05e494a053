// rescon - resilient constrained consensus simulator
// Copyright 2026 rescon contributors
// Licensed under Apache 2.0

#include "rescon/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rescon {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

constexpr double kRateFloor = 1e-300;

}  // namespace

std::string trace_to_csv(const Trace& trace) {
  std::string out;
  out.reserve(trace.rows.size() * 160 + 256);
  out += "t,V,min_Vi,max_Vi,sum_phi,sum_S,sum_psi,vi_iteration_ok,"
         "lemma2_identity_ok,lemma2_lower_ok,lemma3_ok,lemma4_ok,contraction_ok";
  for (const auto& s : trace.final_states) out += ",dist_" + std::to_string(s.id);
  out += '\n';

  const std::size_t agents = trace.final_states.size();
  for (const auto& row : trace.rows) {
    out += std::to_string(row.t);
    for (double v : {row.V, row.min_Vi, row.max_Vi, row.sum_phi, row.sum_S, row.sum_psi}) {
      out += ',';
      if (trace.diagnostics_enabled)
        append_number(out, v);
      else
        out += "nan";
    }
    for (bool flag : {row.vi_iteration_ok, row.lemma2_identity_ok,
                      row.lemma2_lower_ok, row.lemma3_ok, row.lemma4_ok,
                      row.contraction_ok}) {
      out += flag ? ",1" : ",0";
    }
    for (std::size_t i = 0; i < agents; ++i) {
      out += ',';
      if (i < row.dist_to_target.size())
        append_number(out, row.dist_to_target[i]);
      else
        out += "nan";
    }
    out += '\n';
  }
  return out;
}

void write_trace(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_trace: cannot open \"" + path + "\"");
  out << trace_to_csv(trace);
  if (!out) throw std::runtime_error("write_trace: write failed for \"" + path + "\"");
}

double fit_rate(const Trace& trace) {
  double sum_t = 0, sum_y = 0, sum_tt = 0, sum_ty = 0;
  long count = 0;
  for (const auto& row : trace.rows) {
    if (!(row.V > kRateFloor)) continue;
    const double t = static_cast<double>(row.t);
    const double y = std::log(row.V);
    sum_t += t;
    sum_y += y;
    sum_tt += t * t;
    sum_ty += t * y;
    ++count;
  }
  if (count < 2)
    throw std::runtime_error("fit_rate: fewer than two rounds with positive V");
  const double denom = count * sum_tt - sum_t * sum_t;
  if (denom == 0.0) throw std::runtime_error("fit_rate: degenerate round indices");
  const double slope = (count * sum_ty - sum_t * sum_y) / denom;
  return std::exp(slope);
}

}  // namespace rescon
