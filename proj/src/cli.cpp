#include "meanmotion/cli.hpp"

#include "meanmotion/arg_tracker.hpp"
#include "meanmotion/errors.hpp"
#include "meanmotion/lattice.hpp"
#include "meanmotion/mean_motion.hpp"
#include "meanmotion/polynomial_io.hpp"
#include "meanmotion/regression.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace meanmotion::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands{"eval", "basis", "zeros", "track", "mm", "verify"};

bool needs_polynomial(const std::string& sub) { return sub != "verify"; }

std::vector<Convention> selected_conventions(const std::string& name) {
  if (name == "plus") return {Convention::plus};
  if (name == "minus") return {Convention::minus};
  if (name == "both") return {Convention::plus, Convention::minus};
  throw ArgumentError("--convention must be plus, minus or both, got '" + name + "'");
}

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return v.convert_to<long long>();
  }
  return v.str();
}

// Missing coordinates default to 0; a wrong nonzero length is an error.
std::vector<double> point_or_zero(const std::vector<double>& v, std::size_t p, const char* flag) {
  if (v.empty()) return std::vector<double>(p, 0.0);
  if (v.size() != p) {
    throw ArgumentError(std::string(flag) + " has " + std::to_string(v.size()) + " components, polynomial dimension is " +
                        std::to_string(p));
  }
  return v;
}

json zeros_json(const std::vector<Zero>& zeros) {
  json arr = json::array();
  for (const auto& z : zeros) arr.push_back({{"location", z.location}, {"multiplicity", z.multiplicity}});
  return arr;
}

json eval_command(const RunConfig& c, const ExpPolynomial& p) {
  const auto x = point_or_zero(c.x, p.dimension(), "--x");
  const auto y = point_or_zero(c.y, p.dimension(), "--y");
  const auto z = complexify(x, y);
  const Complex v = evaluate(p, z);
  return {{"re", v.real()}, {"im", v.imag()}};
}

json basis_command(const ExpPolynomial& p) {
  const LatticeBasis basis = group_basis(p.exponents());
  json mu = json::array();
  for (const auto& m : basis.basis_vectors) mu.push_back(to_strings(m));
  json k = json::array();
  for (const auto& row : basis.coords) {
    json r = json::array();
    for (const auto& v : row) r.push_back(integer_json(v));
    k.push_back(r);
  }
  return {{"dimension", basis.dimension}, {"rank", basis.rank}, {"mu", mu}, {"K", k}};
}

UnivariateExpSum line_through(const RunConfig& c, const ExpPolynomial& p) {
  const auto x = point_or_zero(c.x, p.dimension(), "--x");
  const auto y = point_or_zero(c.y, p.dimension(), "--y");
  return restrict_line(p, complexify(x, y));
}

json zeros_command(const RunConfig& c, const ExpPolynomial& p) {
  const auto q = line_through(c, p);
  const auto zeros = locate_zeros(q, c.a, c.b);
  int count = 0;
  for (const auto& z : zeros) count += z.multiplicity;
  return {{"interval", {c.a, c.b}}, {"zeros", zeros_json(zeros)}, {"count", count}};
}

json track_command(const RunConfig& c, const ExpPolynomial& p) {
  const auto conventions = selected_conventions(c.convention);
  if (!c.trace_csv.empty() && conventions.size() != 1) {
    throw ArgumentError("--trace-csv needs --convention plus or minus");
  }
  const auto q = line_through(c, p);
  json report{{"interval", {c.a, c.b}}};
  for (Convention conv : conventions) {
    const ArgTrace trace = arg_increment(q, c.a, c.b, conv, {}, !c.trace_csv.empty());
    report[to_string(conv)] = {{"smooth", trace.smooth_increment},
                               {"jump", trace.jump_increment},
                               {"total", trace.total_increment},
                               {"zeros", zeros_json(trace.zeros)}};
    if (!c.trace_csv.empty()) {
      std::ofstream csv(c.trace_csv);
      if (!csv) throw ArgumentError("cannot write '" + c.trace_csv + "'");
      csv << "s,phase_radians\n";
      char buf[64];
      for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.s, s.phase);
        csv << buf;
      }
    }
  }
  return report;
}

json comparison_json(const ConventionComparison& cmp) {
  json windows = json::array();
  for (const auto& w : cmp.box.per_window) {
    windows.push_back({{"size", w.size},
                       {"value", w.value},
                       {"stderr", w.standard_error},
                       {"lines", w.lines},
                       {"skipped", w.skipped}});
  }
  return {{"box",
           {{"per_window", windows},
            {"value", cmp.box.value},
            {"spread", cmp.box.spread},
            {"skipped_lines", cmp.box.skipped_lines},
            {"total_lines", cmp.box.total_lines},
            {"unreliable", cmp.box.unreliable}}},
          {"torus",
           {{"value", cmp.torus.value},
            {"stderr", cmp.torus.standard_error},
            {"samples", cmp.torus.samples},
            {"skipped", cmp.torus.skipped},
            {"degenerate", cmp.torus.degenerate},
            {"unreliable", cmp.torus.unreliable}}},
          {"diff", cmp.diff},
          {"tolerance", cmp.tolerance},
          {"pass", cmp.pass}};
}

EstimatorOptions estimator_options(const RunConfig& c) {
  EstimatorOptions options;
  options.workers = c.workers;
  return options;
}

int mm_command(const RunConfig& c, const ExpPolynomial& p, json& report) {
  const auto conventions = selected_conventions(c.convention);
  const auto y = point_or_zero(c.y, p.dimension(), "--y");
  WindowSchedule schedule;
  schedule.sizes = c.windows;
  schedule.lines_per_box = c.lines;
  schedule.run_length = c.run_length;
  schedule.aspect = c.aspect;
  schedule.seed = c.seed;
  const ComparisonReport cmp = compare_estimators(p, y, schedule, c.torus_samples, c.seed, estimator_options(c));

  report = {{"y", y}, {"seed", c.seed}, {"lattice_rank", cmp.lattice_rank}};
  bool pass = true;
  for (Convention conv : conventions) {
    const auto& side = cmp.conventions[conv == Convention::plus ? 0 : 1];
    report[to_string(conv)] = comparison_json(side);
    pass = pass && side.pass;
  }
  report["pass"] = pass;
  return pass ? success : verification_failure;
}

int verify_command(const RunConfig& c, std::ostream& out) {
  RegressionSettings settings;
  settings.seed = c.seed;
  settings.options = estimator_options(c);
  const auto rows = run_regression(bundled_cases(), settings);
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"case", r.case_name},
                     {"convention", to_string(r.convention)},
                     {"box", r.box},
                     {"torus", r.torus},
                     {"diff", r.diff},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass}});
    }
    out << json{{"rows", arr}, {"pass", pass}}.dump(2) << '\n';
  } else {
    write_regression_csv(rows, out);
  }
  return pass ? success : verification_failure;
}

}  // namespace

void RunConfig::validate() const {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), subcommand) == kSubcommands.end()) {
    throw ArgumentError("unknown subcommand '" + subcommand + "'");
  }
  if (needs_polynomial(subcommand) && polynomial_path.empty()) {
    throw ArgumentError(subcommand + ": --poly is required");
  }
  if (!format.empty() && format != "json" && !(format == "csv" && subcommand == "verify")) {
    throw ArgumentError(subcommand + ": unsupported --format '" + format + "'");
  }
  if ((subcommand == "zeros" || subcommand == "track") && !(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw ArgumentError(subcommand + ": need finite --a < --b");
  }
  if (subcommand == "track" || subcommand == "mm") selected_conventions(convention);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ArgumentError("empty entry in list '" + text + "'");
    const std::string trimmed = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
    if (ec != std::errc() || ptr != trimmed.data() + trimmed.size() || !std::isfinite(v)) {
      throw ArgumentError("not a number: '" + trimmed + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ArgumentError("empty list");
  return values;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  try {
    config.validate();
    if (!config.output_path.empty()) {
      file.open(config.output_path);
      if (!file) throw ArgumentError("cannot write '" + config.output_path + "'");
    }
    std::ostream& sink = config.output_path.empty() ? out : file;

    if (config.subcommand == "verify") {
      const int code = verify_command(config, sink);
      if (code != success) err << "verify: at least one regression case failed\n";
      return code;
    }

    const ExpPolynomial p = parse_polynomial_file(config.polynomial_path);
    json report;
    int code = success;
    if (config.subcommand == "eval") {
      report = eval_command(config, p);
    } else if (config.subcommand == "basis") {
      report = basis_command(p);
    } else if (config.subcommand == "zeros") {
      report = zeros_command(config, p);
    } else if (config.subcommand == "track") {
      report = track_command(config, p);
    } else {
      code = mm_command(config, p, report);
      if (code != success) err << "mm: box and torus estimates disagree or are unreliable\n";
    }
    sink << report.dump(2) << '\n';
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    out << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << '\n';
    return input_error;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    out << json{{"error", {{"kind", "json"}, {"message", e.what()}}}}.dump(2) << '\n';
    return input_error;
  }
}

}  // namespace meanmotion::cli
