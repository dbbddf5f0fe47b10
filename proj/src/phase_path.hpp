#pragma once

#include "meanmotion/arg_tracker.hpp"
#include "meanmotion/exp_polynomial.hpp"

#include <limits>
#include <vector>

namespace meanmotion::detail {

/// Straight segment or circular arc, parametrised by t ∈ [0, 1].
class Path {
 public:
  static Path line(Complex from, Complex to);
  static Path arc(Complex center, double radius, double theta_from, double theta_to);

  Complex point(double t) const;
  Complex velocity(double t) const;
  double length() const;

 private:
  bool is_arc_ = false;
  Complex from_, to_;
  Complex center_;
  double radius_ = 0.0, theta_from_ = 0.0, theta_to_ = 0.0;
};

struct PhaseResult {
  double change = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
};

/// Continuous change of arg q along the path. Steps are halved until both
/// half-steps move the phase by less than π/2 and a Simpson estimate of
/// ∫ Im(q'/q·z') dt agrees with the sampled change, which rules out
/// aliasing past a nearby zero. When `samples` is non-null, (Re z, offset +
/// cumulative phase) is appended at every accepted node.
/// Throws SingularContourError if q vanishes at a node and TrackingError if
/// refinement exceeds max_depth.
PhaseResult track_phase(const UnivariateExpSum& q, const Path& path, int initial_steps, int max_depth,
                        std::vector<PhaseSample>* samples = nullptr, double phase_offset = 0.0);

/// Frequency-aware seeding: max(minimum, ⌈8·Σ|γ|·length/2π⌉).
int initial_steps_for(const UnivariateExpSum& q, double length, int minimum);

/// True when one term strictly dominates the rest on the strip
/// t_lo ≤ Im s ≤ t_hi, so q has no zeros there.
bool dominated_on_strip(const UnivariateExpSum& q, double t_lo, double t_hi);

}  // namespace meanmotion::detail
