#include "meanmotion/mean_motion.hpp"

#include "meanmotion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace meanmotion {

namespace {

constexpr std::uint64_t kBoxStream = 0x626f78;     // "box"
constexpr std::uint64_t kTorusStream = 0x746f72;   // "tor"
constexpr std::uint64_t kDirectStream = 0x646972;  // "dir"
constexpr std::size_t kTorusReplicates = 8;

struct Moments {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t count = 0;
};

Moments moments(const std::vector<double>& values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.standard_error = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
  }
  return m;
}

double perturbation(RandomStream& stream, const EstimatorOptions& options) {
  return options.max_perturbation * (1.0 - stream.uniform());  // (0, max]
}

// Runs `attempt(shift)` with shift 0, then with fresh perturbations while the
// window keeps landing on a zero.
template <typename Attempt>
LineOutcome with_retries(RandomStream& stream, const EstimatorOptions& options, Attempt attempt) {
  LineOutcome out;
  double shift_a = 0.0;
  double shift_b = 0.0;
  for (int k = 0; k <= options.max_retries; ++k) {
    try {
      const ArgIncrements inc = attempt(shift_a, shift_b);
      out.plus = inc.plus;
      out.minus = inc.minus;
      out.retries = k;
      return out;
    } catch (const EndpointZeroError&) {
    } catch (const SingularContourError&) {
    } catch (const TrackingError&) {
      out.retries = k;
      return out;
    }
    shift_a = perturbation(stream, options);
    shift_b = perturbation(stream, options);
  }
  out.retries = options.max_retries;
  return out;
}

std::optional<double> pick(const LineOutcome& o, Convention c) {
  return c == Convention::plus ? o.plus : o.minus;
}

void check_y(std::span<const double> y, std::size_t p) {
  if (y.size() != p) {
    throw ArgumentError("y has length " + std::to_string(y.size()) + ", dimension is " + std::to_string(p));
  }
}

double spread_of_last_three(const std::vector<WindowValue>& windows) {
  const std::size_t n = windows.size();
  const std::size_t first = n > 3 ? n - 3 : 0;
  double lo = windows[first].value;
  double hi = lo;
  for (std::size_t i = first; i < n; ++i) {
    lo = std::min(lo, windows[i].value);
    hi = std::max(hi, windows[i].value);
  }
  return hi - lo;
}

}  // namespace

void BoxSpec::validate() const {
  if (alpha.empty() || alpha.size() != beta.size()) throw ArgumentError("box: alpha and beta lengths differ");
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (!(alpha[j] < beta[j])) throw ArgumentError("box: alpha_j < beta_j violated at j = " + std::to_string(j));
  }
}

double BoxSpec::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) v *= beta[j] - alpha[j];
  return v;
}

void WindowSchedule::validate() const {
  if (sizes.empty()) throw ArgumentError("window schedule: no sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0)) throw ArgumentError("window schedule: sizes must be positive");
    if (i > 0 && !(sizes[i] > sizes[i - 1])) throw ArgumentError("window schedule: sizes must increase");
  }
  if (lines_per_box < 16) throw ArgumentError("window schedule: lines_per_box must be >= 16");
  if (run_length == 0 || static_cast<double>(run_length) > sizes.front()) {
    throw ArgumentError("window schedule: run_length must lie in [1, smallest size]");
  }
  if (lines_per_box < 2 * run_length) throw ArgumentError("window schedule: need at least two runs per cube");
  for (double a : aspect) {
    if (!(a >= 1.0) || !std::isfinite(a)) throw ArgumentError("window schedule: aspect factors must be >= 1");
  }
}

double WindowSchedule::edge(std::size_t window, std::size_t axis) const {
  return sizes.at(window) * (axis < aspect.size() ? aspect[axis] : 1.0);
}

LineOutcome windowed_increments(const LineFamily& family, std::span<const double> y, std::span<const double> x,
                                RandomStream perturbations, const EstimatorOptions& options,
                                std::size_t run_length) {
  if (run_length == 0) throw ArgumentError("windowed_increments: run_length must be positive");
  check_y(y, family.polynomial().dimension());
  const auto base = complexify(x, y);
  const UnivariateExpSum q = family.at(base);
  if (q.empty()) {
    LineOutcome skipped;
    skipped.identically_zero = true;
    return skipped;
  }
  // Only the window centre moves, so one draw shifts both ends.
  const double end = static_cast<double>(run_length) - 0.5;
  return with_retries(perturbations, options, [&](double shift, double) {
    return arg_increments(q, shift - 0.5, shift + end, options.tracker);
  });
}

std::optional<double> windowed_increment(const ExpPolynomial& p, std::span<const double> y,
                                         std::span<const double> x, Convention convention, std::uint64_t seed,
                                         const EstimatorOptions& options) {
  const LineFamily family(p);
  return pick(windowed_increments(family, y, x, RandomStream(seed), options), convention);
}

DirectEstimate direct_mean_motion(const ExpPolynomial& p, std::span<const double> y, const BoxSpec& box,
                                  Convention convention, std::size_t lines, std::uint64_t seed,
                                  const EstimatorOptions& options) {
  box.validate();
  const std::size_t dim = p.dimension();
  check_y(y, dim);
  if (box.alpha.size() != dim) throw ArgumentError("direct_mean_motion: box dimension mismatch");

  const LineFamily family(p);
  const double a = box.alpha[0];
  const double b = box.beta[0];
  std::vector<std::vector<double>> transverse(1);  // ′x samples
  if (dim > 1) {
    if (lines == 0) throw ArgumentError("direct_mean_motion: lines must be positive");
    RandomStream stream(seed, {kDirectStream});
    transverse = unit_cube_points(lines, dim - 1, SamplingMode::stratified, stream);
    for (auto& pt : transverse) {
      for (std::size_t j = 0; j + 1 < dim; ++j) pt[j] = box.alpha[j + 1] + (box.beta[j + 1] - box.alpha[j + 1]) * pt[j];
    }
  }

  std::vector<LineOutcome> outcomes(transverse.size());
  parallel_for(transverse.size(), options.workers, [&](std::size_t i) {
    std::vector<Complex> base(dim);
    base[0] = Complex(0.0, y[0]);
    for (std::size_t j = 1; j < dim; ++j) base[j] = Complex(transverse[i][j - 1], y[j]);
    const UnivariateExpSum q = family.at(base);
    if (q.empty()) {
      outcomes[i].identically_zero = true;
      return;
    }
    RandomStream stream(seed, {kDirectStream, i});
    outcomes[i] = with_retries(stream, options, [&](double shift_a, double shift_b) {
      return arg_increments(q, a + shift_a, b + shift_b, options.tracker);
    });
  });

  DirectEstimate est;
  est.convention = convention;
  est.lines = outcomes.size();
  std::vector<double> values;
  for (const auto& o : outcomes) {
    if (auto v = pick(o, convention)) {
      values.push_back(*v / (b - a));
    } else {
      ++est.skipped;
    }
  }
  est.value = moments(values).mean;
  est.unreliable = values.empty() ||
                   static_cast<double>(est.skipped) >= options.reliability_limit * static_cast<double>(est.lines);
  return est;
}

std::array<MeanMotionEstimate, 2> box_mean_motion_both(const ExpPolynomial& p, std::span<const double> y,
                                                       const WindowSchedule& schedule,
                                                       const EstimatorOptions& options) {
  schedule.validate();
  const std::size_t dim = p.dimension();
  check_y(y, dim);
  const LineFamily family(p);

  std::array<MeanMotionEstimate, 2> out;
  for (std::size_t c = 0; c < 2; ++c) {
    out[c].convention = c == 0 ? Convention::plus : Convention::minus;
    out[c].y.assign(y.begin(), y.end());
  }

  const std::size_t k = schedule.run_length;
  const double run = static_cast<double>(k);
  const std::size_t runs = (schedule.lines_per_box + k - 1) / k;
  for (std::size_t w = 0; w < schedule.sizes.size(); ++w) {
    const double edge = schedule.sizes[w];
    RandomStream stream(schedule.seed, {kBoxStream, w});
    auto points = unit_cube_points(runs, dim, schedule.mode, stream);
    for (auto& pt : points) {
      // First window centre, so the run's centres stay inside [−L/2, L/2].
      const double e1 = schedule.edge(w, 0);
      pt[0] = -0.5 * e1 + (e1 - run + 1.0) * pt[0];
      for (std::size_t j = 1; j < dim; ++j) pt[j] = schedule.edge(w, j) * (pt[j] - 0.5);
    }
    std::vector<LineOutcome> outcomes(points.size());
    parallel_for(points.size(), options.workers, [&](std::size_t i) {
      outcomes[i] = windowed_increments(family, y, points[i], RandomStream(schedule.seed, {kBoxStream, w, i}),
                                        options, k);
    });

    for (std::size_t c = 0; c < 2; ++c) {
      std::vector<double> values;
      values.reserve(outcomes.size());
      for (const auto& o : outcomes) {
        if (auto v = pick(o, out[c].convention)) values.push_back(*v / run);
      }
      const Moments m = moments(values);
      const std::size_t skipped = (outcomes.size() - values.size()) * k;
      out[c].per_window.push_back(WindowValue{edge, m.mean, m.standard_error, outcomes.size() * k, skipped});
      out[c].skipped_lines += skipped;
      out[c].total_lines += outcomes.size() * k;
    }
  }

  for (auto& est : out) {
    est.value = est.per_window.back().value;
    est.spread = spread_of_last_three(est.per_window);
    est.unreliable = static_cast<double>(est.skipped_lines) >=
                     options.reliability_limit * static_cast<double>(est.total_lines);
  }
  return out;
}

MeanMotionEstimate box_mean_motion(const ExpPolynomial& p, std::span<const double> y,
                                   const WindowSchedule& schedule, Convention convention,
                                   const EstimatorOptions& options) {
  auto both = box_mean_motion_both(p, y, schedule, options);
  return both[convention == Convention::plus ? 0 : 1];
}

LineOutcome torus_increments(const LiftedPolynomial& lifted, std::span<const double> y,
                             std::span<const double> u, RandomStream perturbations,
                             const EstimatorOptions& options) {
  const UnivariateExpSum q = lifted.restrict_first_axis(y, u);
  if (q.empty()) {
    // Exceptional set: I± ≡ 0 there.
    LineOutcome zero;
    zero.plus = 0.0;
    zero.minus = 0.0;
    zero.identically_zero = true;
    return zero;
  }
  return with_retries(perturbations, options, [&](double shift, double) {
    return arg_increments(q, shift - 0.5, shift + 0.5, options.tracker);
  });
}

std::array<TorusEstimate, 2> torus_mean_both(const LiftedPolynomial& lifted, std::span<const double> y,
                                             std::size_t samples, std::uint64_t seed, SamplingMode mode,
                                             const EstimatorOptions& options) {
  check_y(y, lifted.base().dimension());
  if (samples == 0) throw ArgumentError("torus_mean: samples must be positive");
  const std::size_t n_dim = lifted.lift_dimension();

  // Stratified sampling runs as independent replicates so the spread of the
  // replicate means gives an honest standard error.
  const std::size_t replicates = (mode == SamplingMode::stratified && samples >= 2 * kTorusReplicates)
                                     ? kTorusReplicates
                                     : 1;
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> replicate_of;
  for (std::size_t r = 0; r < replicates; ++r) {
    RandomStream stream(seed, {kTorusStream, r});
    const std::size_t n = (samples + replicates - 1) / replicates;
    for (auto& pt : unit_cube_points(n, n_dim, mode, stream)) {
      for (auto& coord : pt) coord *= 2.0 * std::numbers::pi;
      points.push_back(std::move(pt));
      replicate_of.push_back(r);
    }
  }

  std::vector<LineOutcome> outcomes(points.size());
  parallel_for(points.size(), options.workers, [&](std::size_t i) {
    outcomes[i] = torus_increments(lifted, y, points[i], RandomStream(seed, {kTorusStream, 0xffff, i}), options);
  });

  std::array<TorusEstimate, 2> out;
  for (std::size_t c = 0; c < 2; ++c) {
    auto& est = out[c];
    est.convention = c == 0 ? Convention::plus : Convention::minus;
    est.samples = outcomes.size();
    std::vector<double> values;
    std::vector<std::vector<double>> by_replicate(replicates);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (outcomes[i].identically_zero) ++est.degenerate;
      if (auto v = pick(outcomes[i], est.convention)) {
        values.push_back(*v);
        by_replicate[replicate_of[i]].push_back(*v);
      } else {
        ++est.skipped;
      }
    }
    const Moments all = moments(values);
    est.value = all.mean;
    if (replicates > 1) {
      std::vector<double> means;
      for (const auto& rep : by_replicate) {
        if (!rep.empty()) means.push_back(moments(rep).mean);
      }
      est.standard_error = moments(means).standard_error;
    } else {
      est.standard_error = all.standard_error;
    }
    est.unreliable = values.empty() ||
                     static_cast<double>(est.skipped) >= options.reliability_limit * static_cast<double>(est.samples);
  }
  return out;
}

TorusEstimate torus_mean(const ExpPolynomial& p, std::span<const double> y, const LatticeBasis& basis,
                         Convention convention, std::size_t samples, std::uint64_t seed, SamplingMode mode,
                         const EstimatorOptions& options) {
  const LiftedPolynomial lifted = lift(p, basis);
  auto both = torus_mean_both(lifted, y, samples, seed, mode, options);
  return both[convention == Convention::plus ? 0 : 1];
}

ComparisonReport compare_estimators(const ExpPolynomial& p, std::span<const double> y,
                                    const WindowSchedule& schedule, std::size_t torus_samples,
                                    std::uint64_t seed, const EstimatorOptions& options) {
  const LatticeBasis basis = group_basis(p.exponents());
  const LiftedPolynomial lifted = lift(p, basis);
  const auto box = box_mean_motion_both(p, y, schedule, options);
  const auto torus = torus_mean_both(lifted, y, torus_samples, seed, SamplingMode::stratified, options);

  ComparisonReport report;
  report.y.assign(y.begin(), y.end());
  report.lattice_rank = basis.rank;
  report.pass = true;
  for (std::size_t c = 0; c < 2; ++c) {
    auto& cmp = report.conventions[c];
    cmp.convention = box[c].convention;
    cmp.box = box[c];
    cmp.torus = torus[c];
    cmp.diff = box[c].value - torus[c].value;
    cmp.tolerance = std::max(0.05, 3.0 * (box[c].spread + torus[c].standard_error));
    cmp.pass = std::abs(cmp.diff) <= cmp.tolerance && !box[c].unreliable && !torus[c].unreliable;
    report.pass = report.pass && cmp.pass;
  }
  return report;
}

}  // namespace meanmotion
