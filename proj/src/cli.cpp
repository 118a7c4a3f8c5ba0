#include "tailbound/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "tailbound/distributions.hpp"
#include "tailbound/empirical.hpp"

namespace tailbound::cli {

namespace {

using Table = std::vector<std::vector<std::string>>;

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw UsageError("cannot parse '" + std::string(text) + "' as a number in " + std::string(what));
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError("cannot parse '" + std::string(text) + "' as an integer in " +
                     std::string(what));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Distribution make_distribution(const std::string& spec) {
  try {
    return parse_distribution(spec);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

const std::string& single_dist(const RunConfig& config, std::string_view command) {
  if (config.dists.size() != 1) {
    throw UsageError(std::string(command) + " needs exactly one --dist");
  }
  return config.dists.front();
}

std::vector<double> grid(const RunConfig& config, std::string_view fallback, std::string_view command) {
  if (config.nu) {
    return parse_nu(*config.nu);
  }
  if (fallback.empty()) {
    throw UsageError(std::string(command) + " needs --nu");
  }
  return parse_nu(fallback);
}

template <class E>
[[noreturn]] void rethrow_at(const E& e, double nu) {
  throw E("at nu=" + format_threshold(nu) + ": " + e.what());
}

// Runs f, prefixing any library error with the threshold it failed at.
template <class F>
auto at_threshold(double nu, F&& f) {
  try {
    return f();
  } catch (const UsageError&) {
    throw;
  } catch (const InvalidInput& e) {
    rethrow_at(e, nu);
  } catch (const DomainError& e) {
    rethrow_at(e, nu);
  } catch (const InvalidBracket& e) {
    rethrow_at(e, nu);
  } catch (const NonConvergence& e) {
    rethrow_at(e, nu);
  }
}

std::string render(const Table& table, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(table) : render_aligned(table);
}

double presented(double v, bool clamp) { return clamp ? std::min(v, 1.0) : v; }

struct ColumnPair {
  std::string suffix;
  std::function<ComparisonRow(const Distribution&, double)> evaluate;
};

std::vector<ColumnPair> table_columns(const Method& method, const QuadratureConfig& quad) {
  auto markov = [&] {
    return std::vector<ColumnPair>{
        {"markov", [quad](const Distribution& d, double nu) { return markov_bounds(d, nu, quad); }}};
  };
  auto moments = [&](const std::vector<MomentOrder>& orders, bool suffix_k) {
    std::vector<ColumnPair> cols;
    for (const MomentOrder order : orders) {
      cols.push_back({suffix_k ? "moment_k" + std::to_string(order.value()) : "moment",
                      [quad, order](const Distribution& d, double nu) {
                        return moment_bounds(d, nu, order, quad);
                      }});
    }
    return cols;
  };
  auto chernoff = [&](double t) {
    return std::vector<ColumnPair>{{"chernoff", [quad, t](const Distribution& d, double nu) {
                                      return chernoff_bounds(d, nu, t, quad);
                                    }}};
  };

  if (std::holds_alternative<CompareMarkov>(method)) return markov();
  if (const auto* m = std::get_if<CompareMoments>(&method)) return moments(m->orders, true);
  if (std::holds_alternative<OptimizeChernoff>(method)) {
    throw UsageError("table needs a comparison method, not an optimized Chernoff bound");
  }
  const BoundKind& kind = std::get<SingleBound>(method).kind;
  if (std::holds_alternative<TraditionalMarkov>(kind) || std::holds_alternative<EnhancedMarkov>(kind)) {
    return markov();
  }
  if (const auto* m = std::get_if<TraditionalMoment>(&kind)) return moments({m->order}, false);
  if (const auto* m = std::get_if<EnhancedMoment>(&kind)) return moments({m->order}, false);
  if (const auto* c = std::get_if<TraditionalChernoff>(&kind)) return chernoff(c->t);
  return chernoff(std::get<EnhancedChernoff>(kind).t);
}

std::string ratio_cell(const ComparisonRow& row, const NumberFormat& numbers) {
  return format_value(accuracy_ratio(row), numbers);
}

}  // namespace

std::vector<double> parse_nu(std::string_view spec) {
  if (spec.find(':') != std::string_view::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) {
      throw UsageError("range '" + std::string(spec) + "' must be start:stop:step");
    }
    const double start = parse_double(parts[0], "--nu");
    const double stop = parse_double(parts[1], "--nu");
    const double step = parse_double(parts[2], "--nu");
    if (!(step > 0.0)) {
      throw UsageError("range step must be positive in '" + std::string(spec) + "'");
    }
    if (start > stop) {
      throw UsageError("range start exceeds stop in '" + std::string(spec) + "'");
    }
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e7) {
      throw UsageError("range '" + std::string(spec) + "' has too many points");
    }
    std::vector<double> values;
    for (int i = 0; i <= static_cast<int>(count); ++i) {
      values.push_back(start + i * step);
    }
    return values;
  }
  std::vector<double> values;
  for (const auto part : split(spec, ',')) {
    values.push_back(parse_double(part, "--nu"));
  }
  return values;
}

Method parse_method(std::string_view spec) {
  if (spec == "compare") return CompareMarkov{};
  if (spec == "markov") return SingleBound{TraditionalMarkov{}};
  if (spec == "enhanced-markov") return SingleBound{EnhancedMarkov{}};
  if (spec == "chernoff:opt") return OptimizeChernoff{ChernoffVariant::traditional};
  if (spec == "enhanced-chernoff:opt") return OptimizeChernoff{ChernoffVariant::enhanced};

  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  try {
    if ((name == "moment" || name == "enhanced-moment") && arg.starts_with("k=")) {
      std::vector<MomentOrder> orders;
      for (const auto k : split(arg.substr(2), ',')) {
        orders.emplace_back(parse_int(k, "--method"));
      }
      if (orders.size() > 1) {
        return CompareMoments{std::move(orders)};
      }
      if (name == "moment") return SingleBound{TraditionalMoment{orders.front()}};
      return SingleBound{EnhancedMoment{orders.front()}};
    }
    if ((name == "chernoff" || name == "enhanced-chernoff") && arg.starts_with("t=")) {
      const double t = parse_double(arg.substr(2), "--method");
      if (name == "chernoff") return SingleBound{TraditionalChernoff{t}};
      return SingleBound{EnhancedChernoff{t}};
    }
  } catch (const UsageError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown method '" + std::string(spec) + "'");
}

std::string cmd_table(const RunConfig& config) {
  const Distribution dist = make_distribution(single_dist(config, "table"));
  const auto columns = table_columns(parse_method(config.method), config.quadrature);
  const auto nus = grid(config, "1:8:1", "table");

  Table table;
  std::vector<std::string> header{"nu", "tail"};
  for (const auto& col : columns) {
    header.push_back("enhanced_" + col.suffix);
    header.push_back("traditional_" + col.suffix);
  }
  table.push_back(std::move(header));

  for (const double nu : nus) {
    std::vector<std::string> line{format_threshold(nu)};
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const ComparisonRow row = at_threshold(nu, [&] { return columns[i].evaluate(dist, nu); });
      if (i == 0) {
        line.push_back(format_value(row.tail, config.numbers));
      }
      line.push_back(format_value(presented(row.enhanced, config.clamp), config.numbers));
      line.push_back(format_value(presented(row.traditional, config.clamp), config.numbers));
    }
    table.push_back(std::move(line));
  }
  return render(table, config.format);
}

std::string cmd_sweep(const RunConfig& config) {
  if (!std::holds_alternative<CompareMarkov>(parse_method(config.method))) {
    throw UsageError("sweep only supports --method compare");
  }
  const std::vector<std::string> specs =
      config.dists.empty() ? std::vector<std::string>{"halfnormal:mean=1", "exponential:mean=1"}
                           : config.dists;
  std::vector<Distribution> dists;
  std::vector<std::string> labels;
  for (const auto& spec : specs) {
    dists.push_back(make_distribution(spec));
    std::string label = dists.back().family();
    const auto seen = std::count_if(labels.begin(), labels.end(),
                                    [&](const std::string& l) { return l.starts_with(label); });
    if (seen > 0) label += "_" + std::to_string(seen + 1);
    labels.push_back(std::move(label));
  }

  std::vector<double> means;
  for (const auto& d : dists) {
    means.push_back(moment(d, MomentOrder(1), config.quadrature));
  }
  const bool shared = std::all_of(means.begin(), means.end(), [&](double m) {
    return std::abs(m - means.front()) <= 1e-12 * std::abs(means.front());
  });

  Table table;
  std::vector<std::string> header{"nu"};
  for (const auto& label : labels) {
    header.push_back("tail_" + label);
    header.push_back("enhanced_" + label);
  }
  if (shared) {
    header.push_back("traditional");
  } else {
    for (const auto& label : labels) header.push_back("traditional_" + label);
  }
  table.push_back(std::move(header));

  for (const double nu : grid(config, "0.05:8:0.05", "sweep")) {
    std::vector<std::string> line{format_threshold(nu)};
    std::vector<std::string> traditional;
    for (const auto& dist : dists) {
      const ComparisonRow row =
          at_threshold(nu, [&] { return markov_bounds(dist, nu, config.quadrature); });
      line.push_back(format_value(row.tail, config.numbers));
      line.push_back(format_value(presented(row.enhanced, config.clamp), config.numbers));
      traditional.push_back(format_value(presented(row.traditional, config.clamp), config.numbers));
    }
    if (shared) {
      line.push_back(traditional.front());
    } else {
      line.insert(line.end(), traditional.begin(), traditional.end());
    }
    table.push_back(std::move(line));
  }
  return render(table, config.format);
}

std::string cmd_bound(const RunConfig& config) {
  const Distribution dist = make_distribution(single_dist(config, "bound"));
  const Method method = parse_method(config.method);
  const auto nus = grid(config, "", "bound");
  const NumberFormat numbers{config.numbers.digits.value_or(3)};
  auto cell = [&](double v) { return format_value(presented(v, config.clamp), numbers); };

  Table table;
  if (std::holds_alternative<CompareMarkov>(method)) {
    table.push_back({"nu", "tail", "enhanced", "traditional"});
    for (const double nu : nus) {
      const auto row = at_threshold(nu, [&] { return markov_bounds(dist, nu, config.quadrature); });
      table.push_back({format_threshold(nu), format_value(row.tail, numbers), cell(row.enhanced),
                       cell(row.traditional)});
    }
  } else if (const auto* single = std::get_if<SingleBound>(&method)) {
    table.push_back({"nu", "method", "bound"});
    for (const double nu : nus) {
      const double v =
          at_threshold(nu, [&] { return evaluate_bound(dist, nu, single->kind, config.quadrature); });
      table.push_back({format_threshold(nu), bound_name(single->kind), cell(v)});
    }
  } else if (const auto* opt = std::get_if<OptimizeChernoff>(&method)) {
    table.push_back({"nu", "method", "t_star", "bound", "at_boundary"});
    const std::string name =
        opt->variant == ChernoffVariant::enhanced ? "enhanced-chernoff:opt" : "chernoff:opt";
    for (const double nu : nus) {
      const auto r = at_threshold(
          nu, [&] { return optimize_chernoff(dist, nu, opt->variant, std::nullopt, config.quadrature); });
      table.push_back({format_threshold(nu), name, format_value(r.t_star, numbers), cell(r.bound),
                       r.at_boundary ? "true" : "false"});
    }
  } else {
    throw UsageError("bound takes a single moment order; use table for a k-sweep");
  }
  return render(table, config.format);
}

VerifyOutput cmd_verify(const RunConfig& config) {
  const bool from_file = config.sample_file.has_value();
  if (from_file == !config.dists.empty()) {
    throw UsageError("verify needs either one --dist or --sample-file");
  }
  const auto nus = grid(config, "1:8:1", "verify");
  for (const double nu : nus) {
    if (!(nu > 0.0)) {
      throw UsageError("threshold nu must be positive, got " + format_threshold(nu));
    }
  }

  std::ostringstream preamble;
  VerificationReport report;
  if (from_file) {
    const Sample sample = Sample::from_file(*config.sample_file);
    report = verify_sample(sample, nus);
    preamble << "# sample=" << *config.sample_file << " n=" << report.n << "\n";
  } else {
    if (config.n < 1) {
      throw UsageError("--n must be at least 1");
    }
    const Distribution dist = make_distribution(single_dist(config, "verify"));
    report = monte_carlo_verify(dist, config.n, config.seed, nus, config.quadrature);
    preamble << "# dist=" << dist.describe() << " n=" << report.n << " seed=" << report.seed
             << "\n";
  }

  Table table;
  std::vector<std::string> header{"nu", "empirical_tail", "empirical_enhanced",
                                  "empirical_traditional"};
  if (!from_file) {
    header.push_back("analytic_tail");
    header.push_back("tail_deviation");
  }
  header.push_back("accuracy_ratio");
  header.push_back("violations");
  table.push_back(std::move(header));

  for (const auto& r : report.rows) {
    std::vector<std::string> line{format_threshold(r.nu), format_value(r.tail, config.numbers),
                                  format_value(r.enhanced, config.numbers),
                                  format_value(r.traditional, config.numbers)};
    if (r.analytic_tail) {
      line.push_back(format_value(*r.analytic_tail, config.numbers));
      line.push_back(format_value(std::abs(r.tail - *r.analytic_tail), config.numbers));
    }
    line.push_back(ratio_cell({r.nu, r.tail, r.enhanced, r.traditional}, config.numbers));
    line.push_back(std::to_string(r.violations));
    table.push_back(std::move(line));
  }

  std::ostringstream text;
  text << preamble.str() << render(table, config.format);
  text << "# max_violation=" << format_significant(report.max_violation, 3);
  if (!from_file) {
    text << " max_tail_deviation=" << format_significant(report.max_tail_deviation, 3);
  }
  text << "\n" << (report.passed() ? "PASS" : "FAIL") << "\n";
  return {text.str(), report.passed()};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov, moment and Chernoff tail bounds with their restricted-expectation "
               "enhancements"};
  app.name("tailbound");
  app.set_config("--config", "", "Read `key = value` option lines from this file");
  app.require_subcommand(1);

  RunConfig config;
  std::string nu;
  std::string format = "csv";
  int digits = 0;
  std::string sample_file;

  app.add_option("--dist", config.dists, "exponential:rate=R | exponential:mean=M | "
                                         "halfnormal:sigma=S | halfnormal:mean=M");
  app.add_option("--nu", nu, "Threshold: v | v1,v2,... | start:stop:step");
  app.add_option("--method", config.method, "Bound to compute (default: compare)");
  app.add_option("--format", format, "csv or table")->check(CLI::IsMember({"csv", "table"}));
  app.add_option("--digits", digits, "Significant digits instead of the table display rule")
      ->check(CLI::Range(1, 17));
  app.add_flag("--clamp", config.clamp, "Cap presented bounds at 1");
  app.add_option("--n", config.n, "Monte Carlo sample size")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "Generator seed (default 0)");
  app.add_option("--sample-file", sample_file, "Observations, one per line");
  app.add_option("--abs-tol", config.quadrature.abs_tol, "Quadrature absolute tolerance");
  app.add_option("--rel-tol", config.quadrature.rel_tol, "Quadrature relative tolerance");

  auto* table = app.add_subcommand("table", "Tail, enhanced and traditional bound per threshold");
  auto* sweep = app.add_subcommand("sweep", "Fine-grid curves of tails and Markov bounds");
  auto* bound = app.add_subcommand("bound", "Evaluate one bound");
  auto* verify = app.add_subcommand("verify", "Monte Carlo or sample check of the bound ordering");
  for (auto* sub : {table, sweep, bound, verify}) {
    sub->fallthrough();
  }

  std::vector<const char*> argv{"tailbound"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (app.count("--nu") > 0) config.nu = nu;
  if (app.count("--digits") > 0) config.numbers.digits = digits;
  if (app.count("--sample-file") > 0) config.sample_file = sample_file;
  config.format = format == "table" ? OutputFormat::table : OutputFormat::csv;

  try {
    config.quadrature.validate();
    if (table->parsed()) {
      out << cmd_table(config);
    } else if (sweep->parsed()) {
      out << cmd_sweep(config);
    } else if (bound->parsed()) {
      out << cmd_bound(config);
    } else {
      const VerifyOutput result = cmd_verify(config);
      out << result.text;
      return result.passed ? 0 : 1;
    }
    return 0;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tailbound::cli
