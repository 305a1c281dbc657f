#include "framelab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "framelab/cli/emit.hpp"
#include "framelab/cli/spec_io.hpp"
#include "framelab/cli/test_functions.hpp"
#include "framelab/dextrodual.hpp"
#include "framelab/hardy.hpp"
#include "framelab/kaczmarz.hpp"
#include "framelab/realline.hpp"

namespace framelab::cli {

namespace {

using Handler = std::function<Table(const RunConfig&, std::ostream&)>;

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing ") + flag);
  return value;
}

template <typename T>
T need(const std::optional<T>& value, const char* flag) {
  if (!value) throw UsageError(std::string("missing ") + flag);
  return *value;
}

const std::vector<int>& need_orders(const RunConfig& config) {
  if (config.orders.empty()) throw UsageError("missing --order or --orders");
  return config.orders;
}

int single_order(const RunConfig& config) { return need_orders(config).back(); }

double clamp_tolerance(const RunConfig& config) { return config.tolerance.value_or(1e-12); }

struct NamedFunctions {
  std::vector<FunctionSpec> functions;
  bool labelled = false;  // a leading "function" column is emitted
};

NamedFunctions functions_for(const RunConfig& config, const CircleMeasure& measure) {
  NamedFunctions out;
  if (!config.function_paths.empty()) {
    for (const auto& path : config.function_paths) out.functions.push_back(load_function(path));
    out.labelled = out.functions.size() > 1;
    return out;
  }
  if (config.count < 1) throw UsageError("missing --function (or --count for generated functions)");
  out.functions = generate_test_functions(measure, config.seed, config.count);
  out.labelled = true;
  return out;
}

Table labelled_table(std::vector<std::string> columns, bool labelled) {
  Table table;
  if (labelled) table.columns.push_back("function");
  table.columns.insert(table.columns.end(), columns.begin(), columns.end());
  return table;
}

void add_row(Table& table, bool labelled, std::size_t index, std::vector<Cell> row) {
  if (labelled) row.insert(row.begin(), static_cast<std::int64_t>(index));
  table.add(std::move(row));
}

Complex parse_point(const std::string& text) {
  const auto colon = text.find(':');
  char* end = nullptr;
  const std::string re_text = text.substr(0, colon);
  const double re = std::strtod(re_text.c_str(), &end);
  if (re_text.empty() || *end != '\0') throw UsageError("bad point '" + text + "'");
  double im = 0.0;
  if (colon != std::string::npos) {
    const std::string im_text = text.substr(colon + 1);
    im = std::strtod(im_text.c_str(), &end);
    if (im_text.empty() || *end != '\0') throw UsageError("bad point '" + text + "'");
  }
  return {re, im};
}

std::vector<Complex> points(const std::vector<std::string>& items, Complex fallback) {
  if (items.empty()) return {fallback};
  std::vector<Complex> out;
  for (const auto& item : items) out.push_back(parse_point(item));
  return out;
}

PositiveSequence parse_sequence(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  if (text == "harmonic") return PositiveSequence::harmonic();
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "geometric") return PositiveSequence::geometric(std::stod(rest));
    if (kind == "list") {
      std::vector<double> values;
      std::stringstream stream(rest);
      std::string item;
      while (std::getline(stream, item, ';')) values.push_back(std::stod(item));
      return PositiveSequence::finite(std::move(values));
    }
  } catch (const std::logic_error&) {
    // fall through to the usage error
  }
  throw UsageError(std::string("cannot read sequence '") + text + "' for " + flag);
}

TwoSidedCoefficients truncated(const TwoSidedCoefficients& coeffs, int order) {
  TwoSidedCoefficients out(order);
  for (int n = -order; n <= order; ++n) out.at(n) = coeffs.at(n);
  return out;
}

void complex_rows(Table& table, bool labelled, std::size_t index, const TwoSidedCoefficients& c,
                  int from) {
  for (int n = from; n <= c.order; ++n) {
    add_row(table, labelled, index, {static_cast<std::int64_t>(n), c.at(n).real(), c.at(n).imag()});
  }
}

ExtensionPlan plan_for(const RunConfig& config, const CircleMeasure& measure) {
  ExtensionPlanOptions options;
  options.parseval = config.parseval;
  options.split = config.split;
  return build_extension_plan(measure, options);
}

ExamplecaseDual examplecase_for(const RunConfig& config, const CircleMeasure& measure) {
  const int top = single_order(config);
  return build_examplecase_dual(measure, config.truncation.value_or(4 * top));
}

std::vector<Cell> error_cells(int order, const ErrorReport& report) {
  return {static_cast<std::int64_t>(order), report.atom_error_sq, report.density_error_sq,
          report.total_error_sq};
}

// ---------------------------------------------------------------------------

Table cmd_moments(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const int order = single_order(config);
  Table table{{"n", "re", "im"}, {}};
  for (int n = -order; n <= order; ++n) {
    const Complex m = moment(measure, n);
    table.add({static_cast<std::int64_t>(n), m.real(), m.imag()});
  }
  return table;
}

Table cmd_aux(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const int order = single_order(config);
  const auto triangle = auxiliary_sequence(MomentTable::from_measure(measure, order), order);
  Table table{{"n", "k", "re", "im"}, {}};
  for (int n = 0; n <= order; ++n) {
    for (int k = 0; k <= n; ++k) {
      const Complex a = triangle(n, k);
      table.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), a.real(), a.imag()});
    }
  }
  return table;
}

Table cmd_effective(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const auto& orders = need_orders(config);
  const auto fs = functions_for(config, measure);
  const int top = orders.back();
  const auto triangle = auxiliary_sequence(MomentTable::from_measure(measure, top), top);
  Table table = labelled_table({"N", "defect", "residual"}, fs.labelled);
  for (std::size_t i = 0; i < fs.functions.size(); ++i) {
    const auto rows = effectiveness_table(measure, triangle, fs.functions[i], orders, clamp_tolerance(config));
    for (const auto& row : rows) {
      add_row(table, fs.labelled, i, {static_cast<std::int64_t>(row.order), row.defect, row.residual});
    }
  }
  return table;
}

Table cmd_dextrodual(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const auto plan = plan_for(config, measure);
  const std::string& sub = config.subcommand;
  if (sub == "build") {
    Table table{{"k", "atom", "weight", "lo", "hi", "split"}, {}};
    for (std::size_t k = 0; k < plan.intervals().size(); ++k) {
      const auto& atom = measure.atoms()[k];
      const auto& J = plan.intervals()[k];
      table.add({static_cast<std::int64_t>(k), atom.x, atom.w, J.lo, J.hi, plan.split()});
    }
    return table;
  }
  if (sub == "bounds") {
    const auto bounds = frame_bounds_extension(plan);
    return Table{{"lower", "upper"}, {{bounds.lower, bounds.upper}}};
  }
  const auto fs = functions_for(config, measure);
  if (sub == "coeffs") {
    Table table = labelled_table({"n", "re", "im"}, fs.labelled);
    for (std::size_t i = 0; i < fs.functions.size(); ++i) {
      complex_rows(table, fs.labelled, i,
                   analysis_coefficients_mixed(plan, fs.functions[i], single_order(config)),
                   -single_order(config));
    }
    return table;
  }
  // reconstruct
  const auto& orders = need_orders(config);
  Table table = labelled_table({"M", "atomErrorSq", "densityErrorSq", "totalErrorSq"}, fs.labelled);
  for (std::size_t i = 0; i < fs.functions.size(); ++i) {
    const auto full = analysis_coefficients_mixed(plan, fs.functions[i], orders.back());
    for (int order : orders) {
      add_row(table, fs.labelled, i,
              error_cells(order, reconstruction_error(measure, truncated(full, order), fs.functions[i])));
    }
  }
  return table;
}

Table cmd_witness(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const double atom = need(config.atom, "--atom");
  const auto target = FunctionSpec::atom_values_only({{atom, 1.0}});
  Table table{{"M", "atomMismatch", "lebesgueNormSq", "distanceSq"}, {}};
  for (int order : need_orders(config)) {
    const auto w = nonrepresentability_witness(measure, target, order);
    table.add({static_cast<std::int64_t>(order), w.atom_mismatch, w.lebesgue_norm_sq, w.distance_sq});
  }
  return table;
}

Table cmd_examplecase(const RunConfig& config, std::ostream&) {
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const auto dual = examplecase_for(config, measure);
  const std::string& sub = config.subcommand;
  if (sub == "build") {
    Table table{{"interval", "lo", "hi"}, {}};
    table.add({std::string("singularHull"), dual.singular_hull.lo, dual.singular_hull.hi});
    table.add({std::string("densityHull"), dual.density_hull.lo, dual.density_hull.hi});
    table.add({std::string("inner"), dual.inner.lo, dual.inner.hi});
    table.add({std::string("outer"), dual.outer.lo, dual.outer.hi});
    return table;
  }
  const auto fs = functions_for(config, measure);
  if (sub == "coeffs") {
    const int order = single_order(config);
    Table table = labelled_table({"n", "re", "im"}, fs.labelled);
    for (std::size_t i = 0; i < fs.functions.size(); ++i) {
      complex_rows(table, fs.labelled, i,
                   analysis_coefficients_examplecase(dual, fs.functions[i], order), -order);
    }
    return table;
  }
  const auto& orders = need_orders(config);
  if (sub == "check") {
    Table table = labelled_table({"M", "lhs", "rhs"}, fs.labelled);
    for (std::size_t i = 0; i < fs.functions.size(); ++i) {
      for (int order : orders) {
        const auto check = bessel_pythagoras_check(dual, fs.functions[i], order);
        add_row(table, fs.labelled, i, {static_cast<std::int64_t>(order), check.lhs, check.rhs});
      }
    }
    return table;
  }
  Table table = labelled_table({"M", "atomErrorSq", "densityErrorSq", "totalErrorSq"}, fs.labelled);
  for (std::size_t i = 0; i < fs.functions.size(); ++i) {
    const auto full = analysis_coefficients_examplecase(dual, fs.functions[i], orders.back());
    for (int order : orders) {
      add_row(table, fs.labelled, i,
              error_cells(order, reconstruction_error(measure, truncated(full, order), fs.functions[i])));
    }
  }
  return table;
}

std::vector<int> dyadic_grid(int top) {
  std::vector<int> grid{0};
  for (int v = 1; v < top; v *= 2) grid.push_back(v);
  if (top > 0) grid.push_back(top);
  return grid;
}

Table cmd_realline(const RunConfig& config, std::ostream&) {
  const std::string& sub = config.subcommand;
  if (sub == "weighted") {
    const auto weights = parse_sequence(config.weights, "--weights");
    const auto coeffs = parse_sequence(config.coeffs, "--coeffs");
    Table table{{"n", "weight", "closedForm", "direct", "tailBound"}, {}};
    for (const auto& row : weighted_bessel_decay(weights, coeffs, config.first, config.last)) {
      table.add({static_cast<std::int64_t>(row.n), row.weight, row.closed_form, row.direct, row.tail_bound});
    }
    return table;
  }
  const auto measure = load_real_measure(need(config.measure_path, "--measure"));
  if (sub == "periodize") {
    const auto circle = periodize(measure, config.period.value_or(1.0));
    Table table{{"x", "w"}, {}};
    for (const auto& atom : circle.atoms()) table.add({atom.x, atom.w});
    return table;
  }
  const auto values = align_values(measure, load_values(need(config.values_path, "--values")));
  if (sub == "lattice") {
    const auto expansion =
        lattice_effective_expansion(measure, config.lattice_c.value_or(std::sqrt(2.0)), values,
                                    need_orders(config));
    Table table{{"N", "defect", "residual"}, {}};
    for (const auto& row : expansion.rows) {
      table.add({static_cast<std::int64_t>(row.order), row.defect, row.residual});
    }
    return table;
  }
  // double
  const int n_order = need(config.n_order, "--N");
  const int m_order = need(config.m_order, "--M");
  const auto expansion = double_expansion_coefficients(disintegrate(measure), values, n_order, m_order);
  Table table{{"N", "M", "defect"}, {}};
  for (int n : dyadic_grid(n_order)) {
    for (int m : dyadic_grid(m_order)) {
      table.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(m), expansion.defect(n, m)});
    }
  }
  return table;
}

FiniteFrameFamily family_for(const RunConfig& config) {
  const std::string kind = config.family.empty() ? "repeated" : config.family;
  if (kind == "auxiliary") {
    const auto measure = load_measure(need(config.measure_path, "--measure"));
    return FiniteFrameFamily::auxiliary_family(measure, single_order(config));
  }
  const int d = config.dimension.value_or(8);
  if (d < 1) throw UsageError("--dim must be positive");
  if (kind == "orthonormal") return FiniteFrameFamily::orthonormal(d, d);
  if (kind == "repeated") return FiniteFrameFamily::repeated_scaled_basis(d);
  if (kind == "orbit") {
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) shift(i, j) = std::pow(0.5, std::abs(i - j) + 1) / d;
      if (i + 1 < d) shift(i + 1, i) += 0.5;
    }
    const Eigen::VectorXcd start = Eigen::VectorXcd::Ones(d) / std::sqrt(static_cast<double>(d));
    return FiniteFrameFamily::orbit(shift, start, 2 * d);
  }
  throw UsageError("unknown family '" + kind + "'");
}

TwoSidedCoefficients boundary_coefficients(const RunConfig& config, const CircleMeasure& measure,
                                           const FunctionSpec& f, int order) {
  std::string dual = config.dual;
  if (dual.empty()) {
    dual = (measure.has_atoms() && measure.has_density() && measure.cantor_weight() == 0.0)
               ? "mixed"
               : "kaczmarz";
  }
  if (dual == "mixed") return analysis_coefficients_mixed(plan_for(config, measure), f, order);
  if (dual == "examplecase") {
    const auto ec = build_examplecase_dual(measure, config.truncation.value_or(4 * order));
    return analysis_coefficients_examplecase(ec, f, order);
  }
  if (dual == "kaczmarz") {
    const auto triangle = auxiliary_sequence(MomentTable::from_measure(measure, order), order);
    const auto one_sided = analysis_coefficients(triangle, measure, f);
    TwoSidedCoefficients out(order);
    for (int n = 0; n <= order; ++n) out.at(n) = one_sided[static_cast<std::size_t>(n)];
    return out;
  }
  throw UsageError("unknown dual '" + dual + "'");
}

Table cmd_hardy(const RunConfig& config, std::ostream& err) {
  const std::string& sub = config.subcommand;
  if (sub == "kernel") {
    const auto family = family_for(config);
    Table table{{"re(w)", "im(w)", "re(z)", "im(z)", "re(K)", "im(K)"}, {}};
    for (const Complex w : points(config.w_points, 0.25)) {
      for (const Complex z : points(config.z_points, 0.5)) {
        const Complex k = reproducing_kernel_eval(family, w, z);
        table.add({w.real(), w.imag(), z.real(), z.imag(), k.real(), k.imag()});
      }
    }
    return table;
  }
  if (sub == "shift") {
    const auto s = shift_residual(family_for(config));
    return Table{{"residual", "operatorNorm"}, {{s.residual, s.operator_norm}}};
  }
  const auto measure = load_measure(need(config.measure_path, "--measure"));
  const auto fs = functions_for(config, measure);
  const int order = single_order(config);
  if (sub == "cauchy" || sub == "vmu") {
    Table table = labelled_table({"n", "re", "im"}, fs.labelled);
    for (std::size_t i = 0; i < fs.functions.size(); ++i) {
      const auto series = sub == "cauchy" ? cauchy_series(measure, fs.functions[i], order)
                                          : normalized_cauchy_series(measure, fs.functions[i], order);
      if (series.unstable) err << "warning: series division is unstable\n";
      complex_rows(table, fs.labelled, i, series.coefficients, 0);
    }
    return table;
  }
  // boundary
  const std::vector<double> radii =
      config.radii.empty() ? std::vector<double>{0.9, 0.99, 0.999} : config.radii;
  Table table = labelled_table({"r", "errorSq"}, fs.labelled);
  for (std::size_t i = 0; i < fs.functions.size(); ++i) {
    const auto coeffs = boundary_coefficients(config, measure, fs.functions[i], order);
    for (double r : radii) {
      add_row(table, fs.labelled, i, {r, boundary_error(measure, coeffs, fs.functions[i], r)});
    }
  }
  return table;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"moments", cmd_moments},         {"aux", cmd_aux},
      {"effective", cmd_effective},     {"dextrodual", cmd_dextrodual},
      {"witness", cmd_witness},         {"examplecase", cmd_examplecase},
      {"realline", cmd_realline},       {"hardy", cmd_hardy},
  };
  return table;
}

}  // namespace

void execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Table table = handlers().at(config.command)(config, err);
  emit(table, config.format, config.out_path, out);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "-h" || args[0] == "--help" || args[0] == "help") {
    out << usage_text();
    return args.empty() ? kUsage : kOk;
  }
  try {
    execute(parse_config(args), out, err);
    return kOk;
  } catch (const CliError& e) {
    err << "framelab: " << e.what() << '\n';
    if (e.code() == kUsage) err << "run 'framelab --help' for usage\n";
    return e.code();
  } catch (const std::exception& e) {
    err << "framelab: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace framelab::cli
