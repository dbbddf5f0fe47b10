#include "meanmotion/errors.hpp"
#include "meanmotion/mean_motion.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace meanmotion {

namespace {

constexpr unsigned kNodesPerPanel = 8;

// Composite Gauss–Legendre nodes and weights on [-half, half].
void composite_rule(double half, std::size_t panels, std::vector<double>& nodes, std::vector<double>& weights) {
  using Rule = boost::math::quadrature::gauss<double, kNodesPerPanel>;
  const auto& abscissa = Rule::abscissa();
  const auto& weight = Rule::weights();
  const double width = 2.0 * half / static_cast<double>(panels);
  nodes.clear();
  weights.clear();
  for (std::size_t k = 0; k < panels; ++k) {
    const double centre = -half + (static_cast<double>(k) + 0.5) * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      // Even-order rule: abscissae are stored for the positive half only.
      for (double sign : {-1.0, 1.0}) {
        nodes.push_back(centre + sign * abscissa[i] * 0.5 * width);
        weights.push_back(weight[i] * 0.5 * width);
      }
    }
  }
}

WeylResult box_averages(const TorusFunction& g, const std::vector<std::vector<double>>& mu,
                        const WindowSchedule& schedule, const WeylConfig& config) {
  schedule.validate();
  if (mu.empty()) throw ArgumentError("weyl_average: no flow vectors");
  const std::size_t p = mu[0].size();
  for (const auto& m : mu) {
    if (m.size() != p || p == 0) throw ArgumentError("weyl_average: flow vectors must share a positive length");
  }

  WeylResult result;
  std::vector<double> nodes, weights, u(mu.size()), x(p);
  for (double edge : schedule.sizes) {
    std::size_t panels = static_cast<std::size_t>(std::ceil(edge / config.panel_width));
    while (panels > 1 && std::pow(static_cast<double>(panels * kNodesPerPanel), static_cast<double>(p)) >
                             static_cast<double>(config.max_nodes)) {
      panels = (panels + 1) / 2;
    }
    composite_rule(0.5 * edge, panels, nodes, weights);

    const std::size_t n = nodes.size();
    std::vector<std::size_t> idx(p, 0);
    // Neumaier-compensated sum: the node count reaches tens of millions.
    std::complex<double> sum = 0.0, carry = 0.0;
    auto add = [](double& acc, double& c, double v) {
      const double t = acc + v;
      c += std::abs(acc) >= std::abs(v) ? (acc - t) + v : (v - t) + acc;
      acc = t;
    };
    while (true) {
      double w = 1.0;
      for (std::size_t d = 0; d < p; ++d) {
        x[d] = nodes[idx[d]];
        w *= weights[idx[d]];
      }
      for (std::size_t r = 0; r < mu.size(); ++r) {
        double acc = 0.0;
        for (std::size_t d = 0; d < p; ++d) acc += mu[r][d] * x[d];
        u[r] = acc;
      }
      const std::complex<double> term = w * g(u);
      double re = sum.real(), im = sum.imag(), cre = carry.real(), cim = carry.imag();
      add(re, cre, term.real());
      add(im, cim, term.imag());
      sum = {re, im};
      carry = {cre, cim};
      std::size_t d = 0;
      while (d < p && ++idx[d] == n) idx[d++] = 0;
      if (d == p) break;
    }
    const std::complex<double> avg = (sum + carry) / std::pow(edge, static_cast<double>(p));
    result.per_window.emplace_back(edge, avg);
  }
  result.value = result.per_window.back().second;
  return result;
}

}  // namespace

WeylResult weyl_average_windows(const TorusFunction& g, const std::vector<std::vector<double>>& mu,
                                const WindowSchedule& schedule, const WeylConfig& config) {
  const IndependenceCheck check = check_independence(mu);
  if (!check.independent) {
    throw PreconditionError("weyl_average: flow vectors admit a small integer relation");
  }
  WeylResult result = box_averages(g, mu, schedule, config);
  result.heuristic_independence = check.heuristic;
  return result;
}

WeylResult weyl_average_windows(const TorusFunction& g, const std::vector<FrequencyVector>& mu,
                                const WindowSchedule& schedule, const WeylConfig& config) {
  if (!check_independence(mu).independent) {
    throw PreconditionError("weyl_average: flow vectors are linearly dependent over Z");
  }
  std::vector<std::vector<double>> mu_double;
  for (const auto& m : mu) mu_double.push_back(to_double(m));
  return box_averages(g, mu_double, schedule, config);
}

std::complex<double> weyl_average(const TorusFunction& g, const std::vector<std::vector<double>>& mu,
                                  const WindowSchedule& schedule, const WeylConfig& config) {
  return weyl_average_windows(g, mu, schedule, config).value;
}

}  // namespace meanmotion
