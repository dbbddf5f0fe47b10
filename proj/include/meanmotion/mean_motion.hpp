#pragma once

#include "meanmotion/arg_tracker.hpp"
#include "meanmotion/exp_polynomial.hpp"
#include "meanmotion/lattice.hpp"
#include "meanmotion/lift.hpp"
#include "meanmotion/sampling.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace meanmotion {

/// Box Π(α, β) = {x : αⱼ < xⱼ < βⱼ}.
struct BoxSpec {
  std::vector<double> alpha;
  std::vector<double> beta;

  void validate() const;
  double volume() const;
};

/// Expanding cube edges L₁ < L₂ < …; each window samples x ∈ [−L/2, L/2]ᵖ.
///
/// Unit windows are drawn in runs of `run_length` consecutive windows along
/// e₁. A run's increments telescope into one tracked increment, which damps
/// the bounded oscillating part of arg P without changing what is averaged.
struct WindowSchedule {
  std::vector<double> sizes{25.0, 50.0, 100.0, 200.0};
  std::size_t lines_per_box = 2048;  // unit windows per cube
  std::size_t run_length = 8;
  std::uint64_t seed = 0;
  SamplingMode mode = SamplingMode::stratified;
  // Optional per-axis edge factors (≥ 1) for boxes that grow faster along
  // some axes; edge j of window w is sizes[w]·aspect[j]. Empty means cubes.
  std::vector<double> aspect;

  void validate() const;
  double edge(std::size_t window, std::size_t axis) const;
};

struct EstimatorOptions {
  TrackerConfig tracker;
  unsigned workers = 0;  // 0 = hardware concurrency
  // Endpoint-zero retries per line, each shifting the window by ε ∈ (0, 1e-6).
  int max_retries = 8;
  double max_perturbation = 1e-6;
  // Skipped fraction at or above which an estimate is flagged unreliable.
  double reliability_limit = 0.01;
};

/// Outcome of one unit-window (or full-interval) trace.
struct LineOutcome {
  std::optional<double> plus;
  std::optional<double> minus;
  bool identically_zero = false;
  int retries = 0;
};

/// Δ_{x₁−1/2 < s < x₁+1/2} arg± P((s, ′x) + iy): the unit window centred at x
/// along e₁. Returns nullopt for a skipped line (identically zero, or still
/// singular after max_retries perturbations drawn from `seed`).
std::optional<double> windowed_increment(const ExpPolynomial& p, std::span<const double> y,
                                         std::span<const double> x, Convention convention,
                                         std::uint64_t seed = 0, const EstimatorOptions& options = {});

/// Both conventions with full skip/retry bookkeeping. With run_length k the
/// traced interval is (x₁ − 1/2, x₁ + k − 1/2): the sum of k consecutive
/// unit-window increments.
LineOutcome windowed_increments(const LineFamily& family, std::span<const double> y, std::span<const double> x,
                                RandomStream perturbations, const EstimatorOptions& options = {},
                                std::size_t run_length = 1);

struct DirectEstimate {
  Convention convention = Convention::plus;
  double value = 0.0;
  std::size_t lines = 0;
  std::size_t skipped = 0;
  bool unreliable = false;
};

/// ∏(βⱼ−αⱼ)⁻¹ ∫ Δ_{α₁<x₁<β₁} arg± P(x+iy) d′x, the ′x integral estimated
/// from `lines` stratified samples (a single full trace when p = 1).
DirectEstimate direct_mean_motion(const ExpPolynomial& p, std::span<const double> y, const BoxSpec& box,
                                  Convention convention, std::size_t lines, std::uint64_t seed,
                                  const EstimatorOptions& options = {});

struct WindowValue {
  double size = 0.0;
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t lines = 0;    // unit windows
  std::size_t skipped = 0;  // unit windows in skipped runs
};

struct MeanMotionEstimate {
  Convention convention = Convention::plus;
  std::vector<double> y;
  std::vector<WindowValue> per_window;
  double value = 0.0;   // final window
  double spread = 0.0;  // max pairwise difference over the final three windows
  std::size_t skipped_lines = 0;
  std::size_t total_lines = 0;
  bool unreliable = false;
};

/// Unit-window increments averaged over each cube of the schedule.
MeanMotionEstimate box_mean_motion(const ExpPolynomial& p, std::span<const double> y,
                                   const WindowSchedule& schedule, Convention convention,
                                   const EstimatorOptions& options = {});
std::array<MeanMotionEstimate, 2> box_mean_motion_both(const ExpPolynomial& p, std::span<const double> y,
                                                       const WindowSchedule& schedule,
                                                       const EstimatorOptions& options = {});

struct TorusEstimate {
  Convention convention = Convention::plus;
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::size_t degenerate = 0;  // u with an identically-zero restriction, I± := 0
  bool unreliable = false;
};

/// Mean over u ∈ [0, 2π]ᴺ of I±(u) = Δ_{−1/2<s<1/2} arg± F(s+iy₁, i′y, u).
TorusEstimate torus_mean(const ExpPolynomial& p, std::span<const double> y, const LatticeBasis& basis,
                         Convention convention, std::size_t samples, std::uint64_t seed,
                         SamplingMode mode = SamplingMode::stratified, const EstimatorOptions& options = {});
std::array<TorusEstimate, 2> torus_mean_both(const LiftedPolynomial& lifted, std::span<const double> y,
                                             std::size_t samples, std::uint64_t seed,
                                             SamplingMode mode = SamplingMode::stratified,
                                             const EstimatorOptions& options = {});

/// I±(u) for one torus point, both conventions.
LineOutcome torus_increments(const LiftedPolynomial& lifted, std::span<const double> y,
                             std::span<const double> u, RandomStream perturbations,
                             const EstimatorOptions& options = {});

// ---------------------------------------------------------------------------

using TorusFunction = std::function<std::complex<double>(std::span<const double>)>;

struct WeylConfig {
  // Composite Gauss–Legendre: panels of at most this width, 8 nodes each.
  double panel_width = 0.5;
  // Above this many tensor nodes per window the panel width is enlarged.
  std::size_t max_nodes = 50'000'000;
};

struct WeylResult {
  std::vector<std::pair<double, std::complex<double>>> per_window;
  std::complex<double> value;
  bool heuristic_independence = false;
};

/// Box averages of g(⟨μ¹,x⟩,…,⟨μᴺ,x⟩) over x ∈ [−L/2, L/2]ᵖ for each window.
/// Throws PreconditionError when the μ are found ℤ-dependent.
WeylResult weyl_average_windows(const TorusFunction& g, const std::vector<std::vector<double>>& mu,
                                const WindowSchedule& schedule, const WeylConfig& config = {});
WeylResult weyl_average_windows(const TorusFunction& g, const std::vector<FrequencyVector>& mu,
                                const WindowSchedule& schedule, const WeylConfig& config = {});
std::complex<double> weyl_average(const TorusFunction& g, const std::vector<std::vector<double>>& mu,
                                  const WindowSchedule& schedule, const WeylConfig& config = {});

// ---------------------------------------------------------------------------

struct ConventionComparison {
  Convention convention = Convention::plus;
  MeanMotionEstimate box;
  TorusEstimate torus;
  double diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ComparisonReport {
  std::vector<double> y;
  std::size_t lattice_rank = 0;
  std::array<ConventionComparison, 2> conventions;
  bool pass = false;
};

/// Box estimator against torus oracle for both conventions. A convention
/// passes when |box − torus| ≤ max(0.05, 3·(spread + torus standard error))
/// and neither side is flagged unreliable.
ComparisonReport compare_estimators(const ExpPolynomial& p, std::span<const double> y,
                                    const WindowSchedule& schedule, std::size_t torus_samples,
                                    std::uint64_t seed, const EstimatorOptions& options = {});

}  // namespace meanmotion
