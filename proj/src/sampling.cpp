#include "meanmotion/sampling.hpp"

#include "meanmotion/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace meanmotion {

namespace {

std::mt19937_64 engine_from_key(const std::vector<std::uint64_t>& key) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * key.size() + 1);
  words.push_back(static_cast<std::uint32_t>(key.size()));
  for (std::uint64_t k : key) {
    words.push_back(static_cast<std::uint32_t>(k & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    : RandomStream([&] {
        std::vector<std::uint64_t> key{seed};
        key.insert(key.end(), path.begin(), path.end());
        return key;
      }()) {}

RandomStream::RandomStream(std::vector<std::uint64_t> key)
    : key_(std::move(key)), engine_(engine_from_key(key_)) {}

RandomStream RandomStream::split(std::uint64_t tag) const {
  std::vector<std::uint64_t> key = key_;
  key.push_back(tag);
  return RandomStream(std::move(key));
}

double RandomStream::uniform() {
  // 53 random bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::vector<std::vector<double>> unit_cube_points(std::size_t n, std::size_t dim, SamplingMode mode,
                                                  RandomStream& stream) {
  if (dim == 0) throw ArgumentError("unit_cube_points: dimension must be positive");
  std::vector<std::vector<double>> points;
  switch (mode) {
    case SamplingMode::random: {
      points.assign(n, std::vector<double>(dim));
      for (auto& pt : points) {
        for (auto& c : pt) c = stream.uniform();
      }
      break;
    }
    case SamplingMode::stratified: {
      points.assign(n, std::vector<double>(dim));
      std::vector<std::size_t> perm(n);
      for (std::size_t d = 0; d < dim; ++d) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), stream.engine());
        for (std::size_t i = 0; i < n; ++i) {
          points[i][d] = (static_cast<double>(perm[i]) + stream.uniform()) / static_cast<double>(n);
        }
      }
      break;
    }
    case SamplingMode::grid: {
      const auto m = static_cast<std::size_t>(
          std::max(1.0, std::round(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim)))));
      std::size_t total = 1;
      for (std::size_t d = 0; d < dim; ++d) total *= m;
      points.assign(total, std::vector<double>(dim));
      for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (std::size_t d = 0; d < dim; ++d) {
          points[i][d] = (static_cast<double>(rest % m) + 0.5) / static_cast<double>(m);
          rest /= m;
        }
      }
      break;
    }
  }
  return points;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace meanmotion
