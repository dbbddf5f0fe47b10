#include "phase_path.hpp"

#include "meanmotion/errors.hpp"

#include <cmath>
#include <numbers>

namespace meanmotion::detail {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 2.0;
// Allowed gap between the Simpson rate integral and the sampled phase change.
constexpr double kSimpsonTolerance = 0.05;
// Below this multiple of the term-modulus sum a value is round-off, so its
// phase carries no information.
constexpr double kNoiseFloor = 1e-13;

struct Node {
  double t;
  Complex value;
  double rate;  // d/dt arg q(z(t))
};

class Tracker {
 public:
  Tracker(const UnivariateExpSum& q, const Path& path, int max_depth, std::vector<PhaseSample>* samples,
          double phase_offset)
      : q_(q), path_(path), max_depth_(max_depth), samples_(samples), phase_(phase_offset) {}

  Node eval(double t) {
    const Complex z = path_.point(t);
    const auto [value, derivative, bound] = q_.evaluate_with_bound(z);
    const double modulus = std::abs(value);
    if (!(modulus > kNoiseFloor * bound) || !std::isfinite(modulus)) {
      throw SingularContourError("phase tracking: function vanishes on the contour");
    }
    result_.min_abs = std::min(result_.min_abs, modulus);
    result_.max_abs = std::max(result_.max_abs, modulus);
    return {t, value, (derivative * path_.velocity(t) / value).imag()};
  }

  void step(const Node& a, const Node& b, int depth) {
    const Node m = eval(0.5 * (a.t + b.t));
    const double left = std::arg(m.value / a.value);
    const double right = std::arg(b.value / m.value);
    const double simpson = (b.t - a.t) / 6.0 * (a.rate + 4.0 * m.rate + b.rate);
    if (std::abs(left) < kQuarterTurn && std::abs(right) < kQuarterTurn &&
        std::abs(simpson - (left + right)) < kSimpsonTolerance) {
      accept(m, left);
      accept(b, right);
      return;
    }
    if (depth >= max_depth_) {
      throw TrackingError("phase tracking: refinement depth " + std::to_string(max_depth_) +
                          " exceeded near s = " + std::to_string(path_.point(m.t).real()) + "+" +
                          std::to_string(path_.point(m.t).imag()) + "i");
    }
    step(a, m, depth + 1);
    step(m, b, depth + 1);
  }

  void accept(const Node& n, double delta) {
    result_.change += delta;
    phase_ += delta;
    if (samples_) samples_->push_back({path_.point(n.t).real(), phase_});
  }

  PhaseResult result() const { return result_; }

 private:
  const UnivariateExpSum& q_;
  const Path& path_;
  int max_depth_;
  std::vector<PhaseSample>* samples_;
  double phase_;
  PhaseResult result_;
};

}  // namespace

Path Path::line(Complex from, Complex to) {
  Path p;
  p.from_ = from;
  p.to_ = to;
  return p;
}

Path Path::arc(Complex center, double radius, double theta_from, double theta_to) {
  Path p;
  p.is_arc_ = true;
  p.center_ = center;
  p.radius_ = radius;
  p.theta_from_ = theta_from;
  p.theta_to_ = theta_to;
  return p;
}

Complex Path::point(double t) const {
  if (!is_arc_) return from_ + t * (to_ - from_);
  const double theta = theta_from_ + t * (theta_to_ - theta_from_);
  return center_ + std::polar(radius_, theta);
}

Complex Path::velocity(double t) const {
  if (!is_arc_) return to_ - from_;
  const double theta = theta_from_ + t * (theta_to_ - theta_from_);
  return Complex(0.0, 1.0) * std::polar(radius_, theta) * (theta_to_ - theta_from_);
}

double Path::length() const {
  if (!is_arc_) return std::abs(to_ - from_);
  return radius_ * std::abs(theta_to_ - theta_from_);
}

PhaseResult track_phase(const UnivariateExpSum& q, const Path& path, int initial_steps, int max_depth,
                        std::vector<PhaseSample>* samples, double phase_offset) {
  Tracker tracker(q, path, max_depth, samples, phase_offset);
  const int n = std::max(1, initial_steps);
  Node prev = tracker.eval(0.0);
  for (int i = 1; i <= n; ++i) {
    const Node next = tracker.eval(static_cast<double>(i) / n);
    tracker.step(prev, next, 0);
    prev = next;
  }
  return tracker.result();
}

int initial_steps_for(const UnivariateExpSum& q, double length, int minimum) {
  const double wanted = std::ceil(8.0 * q.frequency_l1() * length / (2.0 * std::numbers::pi));
  if (!(wanted < 1e8)) throw ArgumentError("phase tracking: path too long for the frequency content");
  return std::max(minimum, static_cast<int>(wanted));
}

bool dominated_on_strip(const UnivariateExpSum& q, double t_lo, double t_hi) {
  const auto& terms = q.terms();
  if (terms.empty()) return false;
  std::vector<double> lo(terms.size()), hi(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double mod = std::abs(terms[k].amplitude);
    const double e1 = std::exp(-terms[k].frequency * t_lo);
    const double e2 = std::exp(-terms[k].frequency * t_hi);
    lo[k] = mod * std::min(e1, e2);
    hi[k] = mod * std::max(e1, e2);
  }
  for (std::size_t k = 0; k < terms.size(); ++k) {
    double rest = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (j != k) rest += hi[j];
    }
    if (lo[k] > rest * (1.0 + 1e-9) + 1e-300) return true;
  }
  return false;
}

}  // namespace meanmotion::detail
