#pragma once

#include <string>
#include <vector>

#include "cflow/curve.hpp"
#include "cflow/functional.hpp"

namespace cflow {

// Explicit-Euler integration of the normal velocity (k - c) n, with the
// parabolic step restriction dt = beta * h_min^2.

struct FlowConfig {
  double c = 1;
  double beta = 0.25;            // in (0, 0.5]
  double resample_spacing = 0;   // 0: initial mean spacing
  double max_time = 1.0;
  long max_steps = 1000000;
  double stop_gradient_norm = 0;  // 0: disabled
  double extinction_length = 0;   // 0: disabled
  int self_check_stride = 4;
  int snapshot_stride = 0;  // 0: record only first and final state
};

struct FlowState {
  DiscreteCurve curve;
  double t = 0;
  long step_count = 0;
};

struct DiagRow {
  long step = 0;
  double t = 0;
  double fc = 0;  // NaN once self-intersection suspends area diagnostics
  double length = 0;
  double area = 0;
  double k_min = 0;
  double k_max = 0;
  double grad_norm = 0;
  bool self_intersecting = false;
  double dt = 0;
  bool resampled = false;
};

enum class Termination { Stationary, Extinct, MaxTime, BlowUp };

std::string to_string(Termination reason);

struct FlowSnapshot {
  long step = 0;
  double t = 0;
  DiscreteCurve curve;
  std::vector<double> s;  // arclength coordinates
  std::vector<double> k;
  double total_length = 0;
  bool resampled_since_prev = false;
};

struct FlowResult {
  FlowState state;
  Termination reason = Termination::MaxTime;
  FlowConfig config;
  std::vector<DiagRow> rows;
  std::vector<FlowSnapshot> snapshots;
};

// One explicit Euler step; resamples if the spacing ratio exceeds 2.
FlowState step(const FlowState& state, const FlowConfig& config);

FlowResult run(const DiscreteCurve& initial, const FlowConfig& config);

// |k_t - (k_ss + k^2 (k - c) + G (k - c))| at a recorded snapshot, with k_t
// from central time differences across neighbouring snapshots and k_ss from
// nonuniform arclength central differences.
double evolution_residual(const FlowResult& trajectory, int vertex_index,
                          int snapshot_index);

struct ConstrainedResult {
  FlowResult flow;
  bool resting = false;     // terminal curve touches the obstacle boundary
  double contact_theta = 0;  // interior angle at a contact transition
  double contact_k_plus = 0; // one-sided curvature on the free side
};

// Gradient descent constrained to stay inside the obstacle region: vertices
// leaving it are projected back onto the obstacle boundary after each step.
ConstrainedResult constrained_flow(const Region& initial, const Region& obstacle,
                                   const FlowConfig& config);

}  // namespace cflow
