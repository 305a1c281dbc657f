#include "framelab/cli/config.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "CLI11.hpp"

namespace framelab::cli {

namespace {

const std::map<std::string, std::set<std::string>>& command_table() {
  static const std::map<std::string, std::set<std::string>> table = {
      {"moments", {}},
      {"aux", {}},
      {"effective", {}},
      {"witness", {}},
      {"dextrodual", {"build", "coeffs", "reconstruct", "bounds"}},
      {"examplecase", {"build", "coeffs", "reconstruct", "check"}},
      {"realline", {"periodize", "lattice", "double", "weighted"}},
      {"hardy", {"cauchy", "vmu", "boundary", "kernel", "shift"}},
  };
  return table;
}

void build_app(CLI::App& app, RunConfig& config, std::vector<std::string>& positionals,
               std::vector<int>& orders, std::optional<int>& order, std::string& format,
               std::optional<double>& tol) {
  app.add_option("command", positionals, "command [subcommand]");
  app.add_option("--measure", config.measure_path, "measure spec (JSON)");
  app.add_option("--function", config.function_paths, "function spec (JSON), repeatable");
  app.add_option("--values", config.values_path, "atom values on the real line (JSON)");
  app.add_option("--orders", orders, "comma-separated increasing orders")->delimiter(',');
  app.add_option("--order", order, "single order");
  app.add_option("--tol", tol, "tolerance override");
  app.add_option("--out", config.out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--seed", config.seed, "seed for generated test functions");
  app.add_option("--count", config.count, "number of generated test functions");
  app.add_option("--period", config.period, "folding period");
  app.add_option("--atom", config.atom, "atom location for the witness target");
  app.add_option("--c", config.lattice_c, "frequency scale for lattice expansions");
  app.add_option("--split", config.split, "split point between atoms and density");
  app.add_option("--N", config.n_order, "slice order");
  app.add_option("--M", config.m_order, "marginal order");
  app.add_option("--truncation", config.truncation, "singular-part truncation");
  app.add_option("--r", config.radii, "comma-separated radii")->delimiter(',');
  app.add_option("--w", config.w_points, "comma-separated points re or re:im")->delimiter(',');
  app.add_option("--z", config.z_points, "comma-separated points re or re:im")->delimiter(',');
  app.add_flag("--parseval", config.parseval, "request |J_k| = a_k");
  app.add_option("--family", config.family, "orthonormal, repeated, orbit or auxiliary");
  app.add_option("--dim", config.dimension, "family dimension");
  app.add_option("--dual", config.dual, "mixed, examplecase or kaczmarz");
  app.add_option("--weights", config.weights, "geometric:r, harmonic or list:v1;v2;...");
  app.add_option("--coeffs", config.coeffs, "geometric:r, harmonic or list:v1;v2;...");
  app.add_option("--first", config.first, "first index of the decay table");
  app.add_option("--last", config.last, "last index of the decay table");
}

}  // namespace

std::string usage_text() {
  RunConfig config;
  std::vector<std::string> positionals;
  std::vector<int> orders;
  std::optional<int> order;
  std::string format;
  std::optional<double> tol;
  CLI::App app{"framelab: Fourier frames and Kaczmarz expansions for mixed measures", "framelab"};
  build_app(app, config, positionals, orders, order, format, tol);
  std::string text = app.help();
  text +=
      "\nCommands:\n"
      "  moments | aux | effective | witness\n"
      "  dextrodual build|coeffs|reconstruct|bounds\n"
      "  examplecase build|coeffs|reconstruct|check\n"
      "  realline periodize|lattice|double|weighted\n"
      "  hardy cauchy|vmu|boundary|kernel|shift\n";
  return text;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  std::vector<std::string> positionals;
  std::vector<int> orders;
  std::optional<int> order;
  std::string format = "csv";
  std::optional<double> tol;

  CLI::App app{"framelab", "framelab"};
  app.set_help_flag();
  build_app(app, config, positionals, orders, order, format, tol);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (positionals.empty()) throw UsageError("missing command");
  config.command = positionals[0];
  const auto it = command_table().find(config.command);
  if (it == command_table().end()) throw UsageError("unknown command '" + config.command + "'");
  if (!it->second.empty()) {
    if (positionals.size() < 2) throw UsageError(config.command + " needs a subcommand");
    config.subcommand = positionals[1];
    if (!it->second.count(config.subcommand)) {
      throw UsageError("unknown subcommand '" + config.subcommand + "' for " + config.command);
    }
    if (positionals.size() > 2) throw UsageError("unexpected argument '" + positionals[2] + "'");
  } else if (positionals.size() > 1) {
    throw UsageError("unexpected argument '" + positionals[1] + "'");
  }

  if (order && !orders.empty()) throw UsageError("give either --order or --orders, not both");
  if (order) orders = {*order};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 0) throw UsageError("orders must be nonnegative");
    if (i > 0 && orders[i] <= orders[i - 1]) throw UsageError("orders must be strictly increasing");
  }
  config.orders = std::move(orders);
  config.tolerance = tol;

  if (format == "csv") {
    config.format = Format::Csv;
  } else if (format == "json") {
    config.format = Format::Json;
  } else {
    throw UsageError("format must be csv or json");
  }
  if (config.count < 0) throw UsageError("--count must be nonnegative");
  for (double r : config.radii) {
    if (!(r >= 0.0 && r <= 1.0)) throw UsageError("radii must lie in [0, 1]");
  }
  return config;
}

}  // namespace framelab::cli
