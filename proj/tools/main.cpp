#include "meanmotion/cli.hpp"
#include "meanmotion/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace mc = meanmotion::cli;

int main(int argc, char** argv) {
  CLI::App app{"Mean motions of exponential polynomials"};
  app.require_subcommand(1);

  mc::RunConfig config;
  std::string x_text, y_text, windows_text, aspect_text;
  std::string track_convention = "plus", mm_convention = "both";

  auto add_poly = [&](CLI::App* sub) { sub->add_option("--poly", config.polynomial_path, "Polynomial JSON file")->required(); };
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--x", x_text, "Real part, comma separated (default 0)");
    sub->add_option("--y", y_text, "Imaginary part, comma separated (default 0)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", config.output_path, "Write the report here instead of stdout");
    sub->add_option("--format", config.format, "json or csv");
    sub->add_option("--workers", config.workers, "Worker threads (0 = all cores)");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate P(x + iy)");
  add_poly(eval);
  add_point(eval);
  add_common(eval);

  auto* basis = app.add_subcommand("basis", "Basis of the exponent group and coordinates K");
  add_poly(basis);
  add_common(basis);

  for (auto* sub : {app.add_subcommand("zeros", "Real zeros of s -> P(x + iy + s e1) on (a, b)"),
                    app.add_subcommand("track", "Argument increment along (a, b)")}) {
    add_poly(sub);
    add_point(sub);
    add_common(sub);
    sub->add_option("--a", config.a, "Left end");
    sub->add_option("--b", config.b, "Right end");
    if (sub->get_name() == "track") {
      sub->add_option("--convention", track_convention, "plus, minus or both");
      sub->add_option("--trace-csv", config.trace_csv, "Write (s, phase_radians) samples");
    }
  }

  auto* mm = app.add_subcommand("mm", "Mean motion: box estimator against the torus oracle");
  add_poly(mm);
  add_common(mm);
  mm->add_option("--y", y_text, "Imaginary part, comma separated (default 0)");
  mm->add_option("--convention", mm_convention, "plus, minus or both");
  mm->add_option("--windows", windows_text, "Cube edges, comma separated");
  mm->add_option("--lines", config.lines, "Unit windows per cube");
  mm->add_option("--aspect", aspect_text, "Per-axis edge factors >= 1, comma separated");
  mm->add_option("--run-length", config.run_length, "Consecutive unit windows traced together");
  mm->add_option("--torus-samples", config.torus_samples, "Torus sample count");
  mm->add_option("--seed", config.seed, "Random seed");

  auto* verify = app.add_subcommand("verify", "Run the bundled regression suite, CSV table");
  add_common(verify);
  verify->add_option("--seed", config.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mc::input_error;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.convention = config.subcommand == "track" ? track_convention : mm_convention;
  try {
    if (!x_text.empty()) config.x = mc::parse_list(x_text);
    if (!y_text.empty()) config.y = mc::parse_list(y_text);
    if (!windows_text.empty()) config.windows = mc::parse_list(windows_text);
    if (!aspect_text.empty()) config.aspect = mc::parse_list(aspect_text);
  } catch (const meanmotion::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cout << nlohmann::json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump(2) << '\n';
    return mc::input_error;
  }
  return mc::run(config, std::cout, std::cerr);
}
