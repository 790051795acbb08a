#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <specdiff/specdiff.hpp>

namespace sd = specdiff;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sd::ConfigError("cannot open config file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f),
                     std::istreambuf_iterator<char>());
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw sd::ConfigError("cannot write output file '" + out_path + "'");
  f << text;
}

std::vector<std::string> split_codes(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct ProblemOpts {
  std::string config_path;
  std::string builtin;
  double lambda = -3.0;
  double u0 = 1.0;
  double t0 = 0.0;
  double T = 1.0;
  double c = 0.3;
};

void add_problem_opts(CLI::App* cmd, ProblemOpts& po) {
  auto* cfg = cmd->add_option("--config", po.config_path,
                              "JSON file describing the problem");
  auto* builtin =
      cmd->add_option("--builtin", po.builtin, "named demo problem")
          ->check(CLI::IsMember({"dahlquist", "circle", "nonsmooth"}));
  cfg->excludes(builtin);
  cmd->add_option("--lambda", po.lambda, "decay rate (dahlquist)");
  cmd->add_option("--u0", po.u0, "initial value (dahlquist)");
  cmd->add_option("--t0", po.t0, "start time");
  cmd->add_option("--T", po.T, "end time");
  cmd->add_option("--c", po.c, "kink offset (nonsmooth)");
}

sd::IvpProblem build_problem(const ProblemOpts& po) {
  if (!po.config_path.empty()) return sd::load_problem(read_file(po.config_path));
  if (po.builtin == "dahlquist") return sd::dahlquist(po.lambda, po.u0, po.t0, po.T);
  if (po.builtin == "circle") return sd::circle_problem(po.T);
  if (po.builtin == "nonsmooth") return sd::nonsmooth_linear(po.c, po.t0, po.T);
  throw sd::ConfigError("pick a problem with --builtin or --config");
}

struct IterOpts {
  double eta = 1e-6;
  int max_iters = 100;
  std::string u1;
};

void add_iter_opts(CLI::App* cmd, IterOpts& io) {
  cmd->add_option("--eta", io.eta, "fixed-point tolerance");
  cmd->add_option("--max-iters", io.max_iters, "fixed-point iteration cap");
  cmd->add_option("--u1", io.u1, "second node policy for two-step schemes")
      ->check(CLI::IsMember({"exact", "ee", "cn"}));
}

sd::SchemeConfig make_config(const IterOpts& io) {
  sd::SchemeConfig cfg;
  cfg.eta = io.eta;
  cfg.max_iters = io.max_iters;
  if (io.u1 == "exact") cfg.u1_policy = sd::U1Policy::exact;
  if (io.u1 == "ee") cfg.u1_policy = sd::U1Policy::bootstrap_ee;
  if (io.u1 == "cn") cfg.u1_policy = sd::U1Policy::bootstrap_cn;
  return cfg;
}

sd::ScalarFunction probe_function(const std::string& expr, const std::string& fn) {
  if (!expr.empty()) {
    const sd::Expression parsed = sd::Expression::parse(expr, {"x"});
    return [parsed](double x) { return parsed(x); };
  }
  if (fn == "kink") return [](double x) { return x < 0.0 ? -x : 2.0 * x; };
  if (fn == "relu") return [](double x) { return x < 0.0 ? 0.0 : x; };
  if (fn == "absval") return [](double x) { return std::fabs(x); };
  throw sd::ConfigError("pick a function with --expr or --fn");
}

void run_sweep(const ProblemOpts& po, const IterOpts& io,
               const std::string& schemes_csv, int k_min, int k_max,
               const std::string& pnorm, const std::string& fmt,
               const std::string& out_path) {
  const sd::IvpProblem problem = build_problem(po);
  const sd::SchemeConfig base = make_config(io);
  const sd::PNorm p = sd::parse_pnorm(pnorm);

  std::vector<sd::ErrorReport> reports;
  for (const std::string& code : split_codes(schemes_csv)) {
    const sd::SchemeId s = sd::parse_scheme(code);
    const auto part = sd::convergence_sweep(problem, s, k_min, k_max, p, base);
    reports.insert(reports.end(), part.begin(), part.end());
  }

  std::string text;
  if (fmt == "csv")
    text = sd::sweep_csv(reports);
  else if (fmt == "markdown")
    text = sd::sweep_markdown(reports);
  else
    text = sd::sweep_svg(reports, problem.id);
  emit(text, out_path);
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

int main(int argc, char** argv) {
  std::cerr << "speckit 0.1.0\n";

  CLI::App app{"one-sided and specular derivative toolkit"};
  app.require_subcommand(1);

  ProblemOpts po;
  IterOpts io;
  std::string scheme = "ee";
  double h = 0.1;
  std::string out_path;
  std::string solve_fmt = "csv";

  CLI::App* solve = app.add_subcommand("solve", "integrate a problem and dump the trajectory");
  // the step size wants the name h, so help keeps only its long form here
  solve->set_help_flag("--help", "print help and exit");
  add_problem_opts(solve, po);
  add_iter_opts(solve, io);
  solve->add_option("--scheme", scheme,
                    std::string("stepping scheme, one of: ") + sd::scheme_code_list())
      ->required();
  solve->add_option("--h", h, "step size")->required();
  solve->add_option("-o,--output", out_path, "write here instead of stdout");
  solve->add_option("--format", solve_fmt, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));

  std::string schemes_csv = "ee";
  int k_min = 3;
  int k_max = 8;
  std::string pnorm = "inf";
  std::string sweep_fmt = "csv";

  CLI::App* sweep = app.add_subcommand("sweep", "accumulated errors across dyadic resolutions");
  add_problem_opts(sweep, po);
  add_iter_opts(sweep, io);
  sweep->add_option("--schemes", schemes_csv, "comma separated scheme codes");
  sweep->add_option("--k-min", k_min, "smallest resolution exponent, N = 2^k")->required();
  sweep->add_option("--k-max", k_max, "largest resolution exponent")->required();
  sweep->add_option("--p", pnorm, "error norm: 1, 2 or inf");
  sweep->add_option("--format", sweep_fmt, "csv, markdown or svg")
      ->check(CLI::IsMember({"csv", "markdown", "svg"}));
  sweep->add_option("-o,--output", out_path, "write here instead of stdout");

  CLI::App* table = app.add_subcommand("table", "markdown convergence table");
  add_problem_opts(table, po);
  add_iter_opts(table, io);
  table->add_option("--schemes", schemes_csv, "comma separated scheme codes");
  table->add_option("--k-min", k_min, "smallest resolution exponent, N = 2^k")->required();
  table->add_option("--k-max", k_max, "largest resolution exponent")->required();
  table->add_option("--p", pnorm, "error norm: 1, 2 or inf");
  table->add_option("-o,--output", out_path, "write here instead of stdout");

  std::string expr;
  std::string fn;
  double x = 0.0;
  double a = 0.0;
  double b = 1.0;
  double tol = 1e-6;
  double bound = 1.0;
  int grid_n = 1024;
  int samples = 256;

  CLI::App* probe = app.add_subcommand("probe", "check the one-sided calculus facts numerically");
  probe->require_subcommand(1);

  const auto add_fn_opts = [&](CLI::App* cmd) {
    auto* e = cmd->add_option("--expr", expr, "function of x");
    auto* f = cmd->add_option("--fn", fn, "catalogued function")
                  ->check(CLI::IsMember({"kink", "relu", "absval"}));
    e->excludes(f);
  };

  CLI::App* fermat = probe->add_subcommand("fermat", "extremum slope bound at a point");
  add_fn_opts(fermat);
  fermat->add_option("--x", x, "point to probe")->required();
  fermat->add_option("--tol", tol, "bound slack");

  CLI::App* mvt = probe->add_subcommand("mvt", "mean slope bracket on an interval");
  add_fn_opts(mvt);
  mvt->add_option("--a", a, "left endpoint")->required();
  mvt->add_option("--b", b, "right endpoint")->required();
  mvt->add_option("--grid-n", grid_n, "scan resolution");
  mvt->add_option("--tol", tol, "bracket slack");

  CLI::App* rolle = probe->add_subcommand("rolle", "zero slope bracket between equal endpoints");
  add_fn_opts(rolle);
  rolle->add_option("--a", a, "left endpoint")->required();
  rolle->add_option("--b", b, "right endpoint")->required();
  rolle->add_option("--grid-n", grid_n, "scan resolution");
  rolle->add_option("--tol", tol, "bracket slack");

  CLI::App* lipschitz = probe->add_subcommand("lipschitz", "slope bound over sampled points");
  add_fn_opts(lipschitz);
  lipschitz->add_option("--a", a, "left endpoint")->required();
  lipschitz->add_option("--b", b, "right endpoint")->required();
  lipschitz->add_option("--bound", bound, "claimed slope bound")->required();
  lipschitz->add_option("--samples", samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      const sd::IvpProblem problem = build_problem(po);
      sd::SchemeConfig cfg = make_config(io);
      cfg.scheme = sd::parse_scheme(scheme);
      cfg.h = h;
      const sd::Trajectory traj = sd::solve_ivp(problem, cfg);
      if (solve_fmt == "svg")
        emit(sd::trajectory_svg(traj, problem.exact, problem.id), out_path);
      else
        emit(sd::trajectory_csv(traj, problem.exact), out_path);
    } else if (sweep->parsed()) {
      run_sweep(po, io, schemes_csv, k_min, k_max, pnorm, sweep_fmt, out_path);
    } else if (table->parsed()) {
      run_sweep(po, io, schemes_csv, k_min, k_max, pnorm, "markdown", out_path);
    } else if (fermat->parsed()) {
      const auto f = probe_function(expr, fn);
      const sd::FermatReport rep = sd::quasi_fermat_probe(f, x, {}, tol);
      std::cout << "probe=fermat\n"
                << "x=" << sd::format_sci(x) << '\n'
                << "pass=" << flag(rep.pass) << '\n'
                << "value=" << sd::format_sci(rep.value) << '\n';
    } else if (mvt->parsed() || rolle->parsed()) {
      const auto f = probe_function(expr, fn);
      const sd::Bracket br =
          mvt->parsed() ? sd::quasi_mvt_bracket(f, a, b, grid_n, {}, tol)
                        : sd::quasi_rolle_bracket(f, a, b, grid_n, {}, tol);
      std::cout << "probe=" << (mvt->parsed() ? "mvt" : "rolle") << '\n'
                << "target=" << sd::format_sci(br.target) << '\n'
                << "c1=" << sd::format_sci(br.c1) << '\n'
                << "c2=" << sd::format_sci(br.c2) << '\n'
                << "lower_value=" << sd::format_sci(br.lower_value) << '\n'
                << "upper_value=" << sd::format_sci(br.upper_value) << '\n';
    } else if (lipschitz->parsed()) {
      const auto f = probe_function(expr, fn);
      const sd::LipschitzReport rep =
          sd::lipschitz_from_bounded_sd(f, a, b, bound, samples, {});
      std::cout << "probe=lipschitz\n"
                << "pass=" << flag(rep.pass) << '\n'
                << "worst_ratio=" << sd::format_sci(rep.worst_ratio) << '\n';
    }
    return 0;
  } catch (const sd::SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const sd::NoDerivativeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const sd::NoLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const sd::BracketNotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const sd::EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const sd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sd::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
