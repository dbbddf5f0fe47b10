#pragma once

#include "meanmotion/exp_polynomial.hpp"

#include <cstddef>
#include <vector>

namespace meanmotion {

/// Branch convention for arg at a real zero of multiplicity p:
/// plus jumps by −pπ, minus by +pπ.
enum class Convention { plus, minus };

const char* to_string(Convention c);

struct TrackerConfig {
  // Relative modulus floor: a contour is certified zero-free when
  // min|q| > zero_threshold·max|q| over its samples. Also the endpoint guard.
  double zero_threshold = 1e-9;
  // Excision circle radius as a fraction of the distance to the nearest other zero.
  double circle_radius_factor = 0.25;
  int max_refinement_depth = 48;
  // Initial nodes on a full circle.
  int quadrature_points_per_turn = 32;
  // Zero search stops subdividing below this interval width.
  double isolation_width = 1e-6;
  // A converged zero counts as real when |Im| is below this.
  double real_axis_tolerance = 1e-9;
  // Upper limit for excision circle radii.
  double max_circle_radius = 1e-3;
  int max_multiplicity = 50;

  void validate() const;
};

struct Zero {
  double location = 0.0;
  int multiplicity = 1;
  // Radius of the certified zero-free circle the multiplicity was read from.
  double radius = 0.0;
};

struct PhaseSample {
  double s;
  double phase;
};

/// One tracked branch arg± of q along (a, b).
struct ArgTrace {
  Convention convention = Convention::plus;
  double a = 0.0;
  double b = 0.0;
  std::vector<PhaseSample> samples;
  std::vector<Zero> zeros;
  double smooth_increment = 0.0;
  double jump_increment = 0.0;
  double total_increment = 0.0;
};

/// Rectangle [s_lo, s_hi] × [t_lo, t_hi] in the complex s-plane.
struct Rect {
  double s_lo, s_hi, t_lo, t_hi;
};

/// Winding number of q around the circle |s − center| = radius. The radius is
/// perturbed (up to max_refinement_depth times) until the circle certifies.
/// Throws DegenerateInputError for an identically-zero q and
/// SingularContourError when no nearby circle certifies.
int winding_number(const UnivariateExpSum& q, Complex center, double radius,
                   const TrackerConfig& config = {});

/// Zeros of q(s + it) inside the rectangle, with multiplicity, from the
/// boundary phase change. Throws SingularContourError when the boundary does
/// not certify.
int count_zeros_rectangle(const UnivariateExpSum& q, const Rect& rect, const TrackerConfig& config = {});

/// Real zeros of q in the open interval (a, b), isolated by rectangle
/// subdivision, located by Newton's method, with multiplicities read from
/// certified circles. Throws EndpointZeroError for a zero at (or within the
/// guard distance of) a or b.
std::vector<Zero> locate_zeros(const UnivariateExpSum& q, double a, double b, const TrackerConfig& config = {});

/// Increment of arg± q over (a, b). The branch is followed along the real
/// axis with semicircular detours around each real zero: above for plus,
/// below for minus, which realises the −pπ / +pπ jumps exactly.
ArgTrace arg_increment(const UnivariateExpSum& q, double a, double b, Convention convention,
                       const TrackerConfig& config = {}, bool keep_samples = true);

/// Both conventions sharing one zero search.
struct ArgIncrements {
  double plus = 0.0;
  double minus = 0.0;
  int zero_count = 0;  // with multiplicity
};
ArgIncrements arg_increments(const UnivariateExpSum& q, double a, double b, const TrackerConfig& config = {});

}  // namespace meanmotion
