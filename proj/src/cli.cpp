#include "polyflow/cli.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "polyflow/calculus.hpp"
#include "polyflow/io.hpp"
#include "polyflow/relations.hpp"
#include "polyflow/selftest.hpp"

namespace polyflow {

namespace {

constexpr std::uint64_t kDefaultSeed = 0x706f6c79666c6fULL;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed) {
  if (cli_seed) return *cli_seed;
  if (const char* env = std::getenv("POLYFLOW_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used, 10);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw ValidationError(std::string("POLYFLOW_SEED is not an unsigned integer: ") + env);
    }
  }
  return kDefaultSeed;
}

std::vector<double> parse_lengths(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("--lengths: cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ValidationError("--lengths: no values given");
  return out;
}

// Throws with the exact violated inequality or sign witness.
void require_admissible(const LengthSpec& l) {
  if (l.admissible) return;
  const double half = 0.5 * l.perimeter();
  for (int nu = 0; nu < l.n(); ++nu) {
    if (!(l.lengths[static_cast<std::size_t>(nu)] < half)) {
      std::ostringstream os;
      os << "lengths are not admissible: l[" << nu << "] = " << l.lengths[static_cast<std::size_t>(nu)]
         << " >= half perimeter " << half;
      throw ValidationError(os.str());
    }
  }
  throw ValidationError("lengths are not admissible");
}

void require_regular(const LengthSpec& l) {
  if (l.regular) return;
  std::string signs;
  for (const int s : *l.singular_signs) signs += s > 0 ? '+' : '-';
  throw ValidationError("lengths are not regular: signs (" + signs +
                        ") make the signed length sum vanish, so the constraint set contains "
                        "collinear polygons");
}

struct SelftestArgs {
  int trials = 100;
  bool corrupt = false;
  std::optional<std::uint64_t> seed;
};

struct FlowArgs {
  std::string lengths_text;
  std::string polygon_path;
  FlowConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string svg_path;
};

struct CheckArgs {
  std::string input = "-";
};

struct EnumerateArgs {
  std::string lengths_text;
  int starts = 64;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

int cmd_selftest(const SelftestArgs& args) {
  SelftestOptions options;
  options.trials = args.trials;
  options.seed = resolve_seed(args.seed);
  options.kernel_corruption = args.corrupt ? 1e-2 : 0.0;
  return run_selftest(options, std::cout) == 0 ? kExitOk : kExitNumerical;
}

int cmd_flow(const FlowArgs& args) {
  args.cfg.validate();
  if (args.lengths_text.empty() == args.polygon_path.empty()) {
    throw ValidationError("flow: give exactly one of --lengths or --polygon");
  }

  std::optional<LengthSpec> spec;
  std::optional<Polygon> start;
  if (!args.lengths_text.empty()) {
    spec = make_length_spec(parse_lengths(args.lengths_text));
    require_admissible(*spec);
    start = random_constrained_polygon(*spec, resolve_seed(args.seed));
  } else {
    const PolygonDocument doc = load_polygon_document(args.polygon_path);
    const Polygon raw = doc.polygon();
    spec = doc.lengths ? make_length_spec(*doc.lengths) : measured_lengths(raw);
    require_admissible(*spec);
    start = newton_reproject(raw, *spec, args.cfg.eps_constraint, args.cfg.newton_max_iter);
  }

  const FlowResult result = run_flow(*start, *spec, args.cfg);

  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw IoError("cannot open " + args.out_path + " for writing");
    write_trajectory(out, args.cfg, result.trajectory, result.reason);
    if (!out) throw IoError("cannot write " + args.out_path);
  } else {
    write_trajectory(std::cout, args.cfg, result.trajectory, result.reason);
  }

  if (!args.svg_path.empty()) {
    std::ofstream svg(args.svg_path);
    if (!svg) throw IoError("cannot open " + args.svg_path + " for writing");
    svg << render_flow_svg(result.trajectory);
    if (!svg) throw IoError("cannot write " + args.svg_path);
  }

  const auto& last = result.trajectory.steps.back();
  std::cerr << "flow: stop=" << to_string(result.reason) << " steps=" << last.step
            << " area=" << std::setprecision(12) << last.area << " residual=" << last.residual
            << '\n';
  return kExitOk;
}

int cmd_check(const CheckArgs& args) {
  PolygonDocument doc = [&] {
    if (args.input == "-") {
      std::ostringstream buffer;
      buffer << std::cin.rdbuf();
      return parse_polygon_document(buffer.str());
    }
    return load_polygon_document(args.input);
  }();

  const Polygon z = doc.polygon();
  std::ostream& out = std::cout;
  out << "n: " << doc.n << '\n';

  const bool has_doc_lengths = doc.lengths.has_value();
  const LengthSpec spec = has_doc_lengths ? make_length_spec(*doc.lengths) : measured_lengths(z);
  out << "lengths: " << (has_doc_lengths ? "document" : "measured from vertices") << '\n';
  out << "admissible: " << (spec.admissible ? "yes" : "no") << ", regular: "
      << (spec.regular ? "yes" : "no") << '\n';
  out << "membership residual: " << std::scientific << std::setprecision(3)
      << membership_residual(z, spec) << std::defaultfloat << '\n';

  if (is_collinear(z)) {
    out << "collinear: yes; the polygon lies in the singular set, turning angles and the area\n"
           "gradient are undefined there, criticality diagnostics skipped\n";
    return kExitOk;
  }
  out << "collinear: no\n";

  // Criticality is translation invariant; center so the membership gate sees
  // only genuine length violations. Fall back to measured lengths when the
  // document lengths do not match the vertices.
  const Polygon zc = center(z);
  LengthSpec used = spec;
  if (membership_residual(zc, used) > 1e-6) {
    used = measured_lengths(zc);
    out << "document lengths do not match the vertices; criticality uses measured lengths\n";
  }
  const CriticalityData crit = criticality(zc, used);
  out << "criticality residual: " << std::scientific << std::setprecision(6) << crit.residual
      << " (" << crit.residual / used.perimeter() << " per unit perimeter)" << std::defaultfloat
      << '\n';

  const CircleFit fit = fit_circle(zc);
  out << "circle fit: center (" << std::setprecision(12) << fit.circle.center.real() << ", "
      << fit.circle.center.imag() << "), radius " << fit.circle.radius << ", relative residual "
      << std::scientific << std::setprecision(3) << fit.relative_residual << std::defaultfloat
      << '\n';

  if (fit.relative_residual <= 1e-6) {
    const MultiplierReport report = lagrange_multipliers(zc, fit.circle);
    out << "multipliers (edge: lambda):\n";
    for (std::size_t nu = 0; nu < report.lambda.size(); ++nu) {
      out << "  " << nu << ": " << std::setprecision(12) << report.lambda[nu] << '\n';
    }
    out << "max multiplier imaginary part: " << std::scientific << std::setprecision(3)
        << report.max_imag_part << '\n';
    out << "stationarity residual: " << report.max_stationarity_residual << std::defaultfloat
        << '\n';
    out << "diameter edges:";
    bool any = false;
    for (int nu = 0; nu < zc.n(); ++nu) {
      if (check_free_edge_critical(zc, nu)) {
        out << ' ' << nu;
        any = true;
      }
    }
    out << (any ? "" : " none") << '\n';
    out << "regular star (equal central angle steps): "
        << (check_perimeter_constrained_critical(zc) ? "yes" : "no") << '\n';
  } else {
    out << "not cocyclic; multiplier and diameter diagnostics need a cocyclic polygon\n";
  }

  const double area = oriented_area(zc);
  out << "oriented area: " << std::setprecision(12) << area << '\n';
  if (doc.n == 3) {
    out << "triangle relation residual: " << std::scientific << std::setprecision(3)
        << heron_residual(area, {used.lengths[0], used.lengths[1], used.lengths[2]})
        << std::defaultfloat << '\n';
  } else if (doc.n == 4) {
    out << "quadrilateral relation residual: " << std::scientific << std::setprecision(3)
        << brahmagupta_residual(area, {used.lengths[0], used.lengths[1], used.lengths[2], used.lengths[3]})
        << std::defaultfloat << '\n';
  }
  return kExitOk;
}

int cmd_enumerate(const EnumerateArgs& args) {
  const LengthSpec spec = make_length_spec(parse_lengths(args.lengths_text));
  require_admissible(spec);
  require_regular(spec);
  if (args.starts < 0) throw ValidationError("--starts must be nonnegative");

  FlowConfig cfg;
  const EnumerationResult result = enumerate_critical(spec, args.starts, cfg, resolve_seed(args.seed));
  const ClusterRelationReport relations = check_cluster_relations(result.clusters, spec);

  if (!args.out_path.empty()) {
    save_cluster_report(spec, result, relations, args.out_path);
  } else {
    std::cout << format_cluster_report(spec, result, relations) << '\n';
  }

  std::cerr << "enumerate: " << result.clusters.size() << " clusters from " << result.total_starts
            << " starts (" << result.failed_starts << " failed); delta_n=" << relations.delta
            << " betti_sum_bound=" << relations.betti_bound << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"shape space of polygons with prescribed edge lengths: gradient flow of the "
               "oriented area, critical polygon search, diagnostics"};
  app.require_subcommand(1);

  SelftestArgs selftest_args;
  auto* selftest = app.add_subcommand("selftest", "run the operator and gradient property suites");
  selftest->add_option("--trials", selftest_args.trials, "random fields per suite and cycle size")
      ->check(CLI::PositiveNumber);
  selftest->add_flag("--corrupt-b-kernel", selftest_args.corrupt,
                     "test hook: corrupt a kernel tap; the suites must fail");
  std::uint64_t selftest_seed = 0;
  auto* selftest_seed_opt = selftest->add_option("--seed", selftest_seed, "RNG seed");

  FlowArgs flow_args;
  auto* flow = app.add_subcommand("flow", "run the area-ascent flow from a seeded or given start");
  flow->add_option("--lengths", flow_args.lengths_text, "comma-separated edge lengths");
  flow->add_option("--polygon", flow_args.polygon_path, "polygon document to start from");
  flow->add_option("--dt", flow_args.cfg.dt, "Euler step size");
  flow->add_option("--eps", flow_args.cfg.eps_constraint, "reprojection tolerance");
  flow->add_option("--max-steps", flow_args.cfg.max_steps, "step budget");
  flow->add_option("--snapshot-stride", flow_args.cfg.snapshot_stride,
                   "accepted steps between vertex snapshots");
  std::uint64_t flow_seed = 0;
  auto* flow_seed_opt = flow->add_option("--seed", flow_seed, "RNG seed for the random start");
  flow->add_option("--out", flow_args.out_path, "trajectory JSONL path (default: stdout)");
  flow->add_option("--svg", flow_args.svg_path, "render the run to this SVG file");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "diagnose a polygon document");
  check->add_option("input", check_args.input, "polygon JSON path, or - for stdin");

  EnumerateArgs enum_args;
  auto* enumerate = app.add_subcommand("enumerate", "multistart search for critical polygons");
  enumerate->add_option("--lengths", enum_args.lengths_text, "comma-separated edge lengths")
      ->required();
  enumerate->add_option("--starts", enum_args.starts, "number of seeded flows");
  std::uint64_t enum_seed = 0;
  auto* enum_seed_opt = enumerate->add_option("--seed", enum_seed, "RNG seed");
  enumerate->add_option("--out", enum_args.out_path, "cluster report path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*selftest) {
      if (selftest_seed_opt->count() > 0) selftest_args.seed = selftest_seed;
      return cmd_selftest(selftest_args);
    }
    if (*flow) {
      if (flow_seed_opt->count() > 0) flow_args.seed = flow_seed;
      return cmd_flow(flow_args);
    }
    if (*check) {
      return cmd_check(check_args);
    }
    if (*enumerate) {
      if (enum_seed_opt->count() > 0) enum_args.seed = enum_seed;
      return cmd_enumerate(enum_args);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace polyflow
