#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

namespace meanmotion {

/// Deterministic random stream addressed by a key path (seed, tag, tag, …).
///
/// Streams with different paths are statistically independent; the same path
/// always yields the same sequence. split() derives a child stream without
/// consuming from the parent, so work items can be seeded by index.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {});

  RandomStream split(std::uint64_t tag) const;

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  std::mt19937_64& engine() { return engine_; }

 private:
  explicit RandomStream(std::vector<std::uint64_t> key);

  std::vector<std::uint64_t> key_;
  std::mt19937_64 engine_;
};

enum class SamplingMode {
  random,      // i.i.d. uniform
  stratified,  // Latin hypercube
  grid,        // deterministic cell centres of a regular grid
};

/// n points in [0,1)^dim. For `grid`, n is rounded to m^dim with m = round(n^{1/dim}).
std::vector<std::vector<double>> unit_cube_points(std::size_t n, std::size_t dim, SamplingMode mode,
                                                  RandomStream& stream);

/// Calls fn(i) for every i in [0, n) on up to `workers` threads (0 = hardware
/// concurrency). Callers write results into slot i and reduce in index order,
/// which keeps outputs independent of the worker count.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace meanmotion
