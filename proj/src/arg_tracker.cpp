#include "meanmotion/arg_tracker.hpp"

#include "meanmotion/errors.hpp"
#include "phase_path.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace meanmotion {

namespace {

using detail::Path;
using detail::PhaseResult;
using detail::track_phase;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Allowed distance of the boundary phase change from a whole number of turns.
constexpr double kTurnResidual = 0.1;
constexpr int kContourRetries = 3;
constexpr int kMinEdgeSteps = 8;
constexpr int kMinSegmentSteps = 64;
constexpr int kNewtonIterations = 60;

// Split positions tried in turn; off-centre values dodge zeros that sit at
// symmetric points such as the middle of an interval.
constexpr std::array<double, 6> kSplitFractions{0.5, 0.4618, 0.5382, 0.4236, 0.5764, 0.3819};

void require_nonzero(const UnivariateExpSum& q, const char* op) {
  if (q.empty()) throw DegenerateInputError(std::string(op) + ": function is identically zero");
}

// Winding number of a certified circle, or nullopt when the circle does not
// certify (a zero on or too near the contour).
std::optional<int> circle_winding(const UnivariateExpSum& q, Complex center, double radius,
                                  const TrackerConfig& config) {
  for (int attempt = 0; attempt < kContourRetries; ++attempt) {
    PhaseResult res;
    try {
      const Path circle = Path::arc(center, radius, 0.0, kTwoPi);
      const int steps = detail::initial_steps_for(q, circle.length(), config.quadrature_points_per_turn)
                        << attempt;
      res = track_phase(q, circle, steps, config.max_refinement_depth);
    } catch (const SingularContourError&) {
      return std::nullopt;
    }
    if (!(res.min_abs > config.zero_threshold * res.max_abs)) return std::nullopt;
    const double turns = res.change / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) < kTurnResidual) return static_cast<int>(rounded);
  }
  throw TrackingError("winding_number: phase change does not settle to a whole number of turns");
}

// Complex Newton iteration z ← z − m·q/q', m the expected multiplicity.
std::optional<Complex> newton(const UnivariateExpSum& q, Complex z, int multiplicity) {
  for (int it = 0; it < kNewtonIterations; ++it) {
    const auto [value, derivative] = q.value_and_derivative(z);
    if (value == 0.0) return z;
    if (derivative == 0.0 || !std::isfinite(std::abs(derivative))) return std::nullopt;
    const Complex dz = static_cast<double>(multiplicity) * value / derivative;
    z -= dz;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(dz) <= 1e-14 * std::max(1.0, std::abs(z))) return z;
  }
  return std::nullopt;
}

struct Candidate {
  double location;
  int count;
};

class ZeroSearch {
 public:
  ZeroSearch(const UnivariateExpSum& q, const TrackerConfig& config) : q_(q), config_(config) {
    const double max_freq = q.max_abs_frequency();
    height_cap_ = max_freq > 0.0 ? std::min(0.5, 1.0 / max_freq) : 0.5;
  }

  double height_for(double width) const { return std::min(0.5 * width, height_cap_); }

  int count(double s0, double s1, double h) const {
    return count_zeros_rectangle(q_, Rect{s0, s1, -h, h}, config_);
  }

  void refine(double s0, double s1, double h, int count_here, int depth) {
    const double width = s1 - s0;
    const double mid = 0.5 * (s0 + s1);
    auto inside = [&](Complex z) { return z.real() > s0 && z.real() < s1 && std::abs(z.imag()) < h; };

    if (count_here == 1) {
      if (auto z = newton(q_, Complex(mid, 0.0), 1); z && inside(*z)) {
        // The box holds exactly one zero and Newton found it.
        if (std::abs(z->imag()) <= config_.real_axis_tolerance) candidates_.push_back({z->real(), 1});
        return;
      }
    }
    if (width <= config_.isolation_width || depth >= config_.max_refinement_depth) {
      const auto z = newton(q_, Complex(mid, 0.0), count_here);
      const double location = (z && inside(*z)) ? z->real() : mid;
      candidates_.push_back({location, count_here});
      return;
    }
    for (double fraction : kSplitFractions) {
      const double cut = s0 + fraction * width;
      const double h_left = height_for(cut - s0);
      const double h_right = height_for(s1 - cut);
      int left = 0;
      int right = 0;
      try {
        left = count(s0, cut, h_left);
        right = count(cut, s1, h_right);
      } catch (const SingularContourError&) {
        continue;
      }
      if (left > 0) refine(s0, cut, h_left, left, depth + 1);
      if (right > 0) refine(cut, s1, h_right, right, depth + 1);
      return;
    }
    // No split certifies: the zeros inside sit closer together than the
    // working precision resolves, so the box is kept as one cluster.
    const auto z = newton(q_, Complex(mid, 0.0), count_here);
    candidates_.push_back({(z && inside(*z)) ? z->real() : mid, count_here});
  }

  std::vector<Candidate> take() { return std::move(candidates_); }
  double height_cap() const { return height_cap_; }

 private:
  const UnivariateExpSum& q_;
  const TrackerConfig& config_;
  double height_cap_;
  std::vector<Candidate> candidates_;
};

std::vector<Path> detour_path(double a, double b, const std::vector<Zero>& zeros, Convention convention) {
  std::vector<Path> pieces;
  double cursor = a;
  for (const auto& z : zeros) {
    pieces.push_back(Path::line(Complex(cursor, 0.0), Complex(z.location - z.radius, 0.0)));
    // Start at angle π (left of the zero); plus passes over the top, minus underneath.
    const double end = convention == Convention::plus ? 0.0 : kTwoPi;
    pieces.push_back(Path::arc(Complex(z.location, 0.0), z.radius, kPi, end));
    cursor = z.location + z.radius;
  }
  pieces.push_back(Path::line(Complex(cursor, 0.0), Complex(b, 0.0)));
  return pieces;
}

int piece_steps(const UnivariateExpSum& q, const Path& piece, bool is_arc, const TrackerConfig& config) {
  const int minimum = is_arc ? config.quadrature_points_per_turn / 2 : kMinSegmentSteps;
  return detail::initial_steps_for(q, piece.length(), minimum);
}

void check_interval(double a, double b, const char* op) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError(std::string(op) + ": interval must satisfy a < b");
  }
}

}  // namespace

const char* to_string(Convention c) { return c == Convention::plus ? "plus" : "minus"; }

void TrackerConfig::validate() const {
  if (!(zero_threshold > 0.0) || !(circle_radius_factor > 0.0) || !(quadrature_points_per_turn > 0) ||
      !(isolation_width > 0.0) || !(real_axis_tolerance > 0.0) || !(max_circle_radius > 0.0) ||
      !(max_multiplicity > 0)) {
    throw ArgumentError("tracker config: all parameters must be positive");
  }
  if (max_refinement_depth < 20) throw ArgumentError("tracker config: max_refinement_depth must be >= 20");
}

int winding_number(const UnivariateExpSum& q, Complex center, double radius, const TrackerConfig& config) {
  require_nonzero(q, "winding_number");
  config.validate();
  if (!(radius > 0.0)) throw ArgumentError("winding_number: radius must be positive");
  for (int attempt = 0; attempt <= config.max_refinement_depth; ++attempt) {
    const int k = attempt / 2 + 1;
    const double r = attempt == 0 ? radius
                     : attempt % 2 == 1 ? radius * (1.0 + 0.07 * k)
                                        : radius / (1.0 + 0.07 * k);
    if (auto w = circle_winding(q, center, r, config)) return *w;
  }
  throw SingularContourError("winding_number: no zero-free circle near the requested radius");
}

int count_zeros_rectangle(const UnivariateExpSum& q, const Rect& rect, const TrackerConfig& config) {
  require_nonzero(q, "count_zeros_rectangle");
  if (!(rect.s_lo < rect.s_hi) || !(rect.t_lo < rect.t_hi)) {
    throw ArgumentError("count_zeros_rectangle: empty rectangle");
  }
  if (detail::dominated_on_strip(q, rect.t_lo, rect.t_hi)) return 0;

  const std::array<Complex, 4> corners{Complex(rect.s_lo, rect.t_lo), Complex(rect.s_hi, rect.t_lo),
                                       Complex(rect.s_hi, rect.t_hi), Complex(rect.s_lo, rect.t_hi)};
  for (int attempt = 0; attempt < kContourRetries; ++attempt) {
    PhaseResult total;
    for (std::size_t e = 0; e < 4; ++e) {
      const Path edge = Path::line(corners[e], corners[(e + 1) % 4]);
      const int steps = detail::initial_steps_for(q, edge.length(), kMinEdgeSteps) << attempt;
      const PhaseResult part = track_phase(q, edge, steps, config.max_refinement_depth);
      total.change += part.change;
      total.min_abs = std::min(total.min_abs, part.min_abs);
      total.max_abs = std::max(total.max_abs, part.max_abs);
    }
    if (!(total.min_abs > config.zero_threshold * total.max_abs)) {
      throw SingularContourError("count_zeros_rectangle: boundary passes too close to a zero");
    }
    const double turns = total.change / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) < kTurnResidual) return static_cast<int>(rounded);
  }
  throw TrackingError("count_zeros_rectangle: boundary phase does not settle to whole turns");
}

std::vector<Zero> locate_zeros(const UnivariateExpSum& q, double a, double b, const TrackerConfig& config) {
  require_nonzero(q, "locate_zeros");
  config.validate();
  check_interval(a, b, "locate_zeros");

  const double scale = q.amplitude_sum();
  const double end_a = std::abs(q(Complex(a, 0.0)));
  const double end_b = std::abs(q(Complex(b, 0.0)));
  if (end_a <= config.zero_threshold * scale || end_b <= config.zero_threshold * scale) {
    throw EndpointZeroError("locate_zeros: zero at an interval endpoint");
  }

  ZeroSearch search(q, config);
  if (detail::dominated_on_strip(q, -search.height_cap(), search.height_cap())) return {};

  std::optional<int> top;
  double h = search.height_for(b - a);
  for (int attempt = 0; attempt < 6 && !top; ++attempt) {
    try {
      top = search.count(a, b, h);
    } catch (const SingularContourError&) {
      h *= 0.9271;
    }
  }
  if (!top) {
    if (std::min(end_a, end_b) < 1e-6 * scale) {
      throw EndpointZeroError("locate_zeros: zero too close to an interval endpoint");
    }
    throw SingularContourError("locate_zeros: cannot certify the search strip");
  }
  if (*top == 0) return {};
  search.refine(a, b, h, *top, 0);

  auto candidates = search.take();
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) { return x.location < y.location; });

  const double guard = config.zero_threshold * std::max(1.0, b - a);
  std::vector<Zero> zeros;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double loc = candidates[i].location;
    if (loc - a <= guard || b - loc <= guard) {
      throw EndpointZeroError("locate_zeros: zero within the guard distance of an endpoint");
    }
    double nearest = std::numeric_limits<double>::infinity();
    if (i > 0) nearest = std::min(nearest, loc - candidates[i - 1].location);
    if (i + 1 < candidates.size()) nearest = std::min(nearest, candidates[i + 1].location - loc);
    double radius = std::min({config.circle_radius_factor * nearest, 0.5 * (loc - a), 0.5 * (b - loc),
                              config.max_circle_radius});

    std::optional<int> winding;
    for (int attempt = 0; attempt < 24; ++attempt, radius *= 0.5) {
      winding = circle_winding(q, Complex(loc, 0.0), radius, config);
      if (winding && *winding == candidates[i].count) break;
    }
    if (!winding || *winding != candidates[i].count) {
      throw TrackingError("locate_zeros: no certified circle around s = " + std::to_string(loc) +
                          " reproduces the isolated zero count " + std::to_string(candidates[i].count));
    }
    if (*winding > config.max_multiplicity) {
      throw TrackingError("locate_zeros: multiplicity " + std::to_string(*winding) + " at s = " +
                          std::to_string(loc) + " exceeds the cap");
    }
    zeros.push_back(Zero{loc, *winding, radius});
  }
  return zeros;
}

ArgTrace arg_increment(const UnivariateExpSum& q, double a, double b, Convention convention,
                       const TrackerConfig& config, bool keep_samples) {
  ArgTrace trace;
  trace.convention = convention;
  trace.a = a;
  trace.b = b;
  trace.zeros = locate_zeros(q, a, b, config);

  const auto pieces = detour_path(a, b, trace.zeros, convention);
  double phase = std::arg(q(Complex(a, 0.0)));
  if (keep_samples) trace.samples.push_back({a, phase});
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const bool is_arc = i % 2 == 1;
    const PhaseResult part = track_phase(q, pieces[i], piece_steps(q, pieces[i], is_arc, config),
                                         config.max_refinement_depth,
                                         keep_samples ? &trace.samples : nullptr, phase);
    phase += part.change;
    trace.total_increment += part.change;
  }

  int multiplicity = 0;
  for (const auto& z : trace.zeros) multiplicity += z.multiplicity;
  trace.jump_increment = (convention == Convention::plus ? -kPi : kPi) * multiplicity;
  trace.smooth_increment = trace.total_increment - trace.jump_increment;
  return trace;
}

ArgIncrements arg_increments(const UnivariateExpSum& q, double a, double b, const TrackerConfig& config) {
  const auto zeros = locate_zeros(q, a, b, config);
  const auto over = detour_path(a, b, zeros, Convention::plus);
  const auto under = detour_path(a, b, zeros, Convention::minus);

  ArgIncrements out;
  for (std::size_t i = 0; i < over.size(); ++i) {
    const bool is_arc = i % 2 == 1;
    const double plus = track_phase(q, over[i], piece_steps(q, over[i], is_arc, config),
                                    config.max_refinement_depth)
                            .change;
    out.plus += plus;
    if (is_arc) {
      out.minus += track_phase(q, under[i], piece_steps(q, under[i], is_arc, config),
                               config.max_refinement_depth)
                       .change;
    } else {
      out.minus += plus;
    }
  }
  for (const auto& z : zeros) out.zero_count += z.multiplicity;
  return out;
}

}  // namespace meanmotion
