#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "kantian/cli.hpp"
#include "kantian/equilibrium.hpp"
#include "kantian/error.hpp"
#include "kantian/pareto.hpp"
#include "kantian/report.hpp"
#include "kantian/select.hpp"
#include "kantian/shift.hpp"

namespace kantian::cli {

namespace {

struct Options {
  std::string game;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int points = 25;
  double theta = 0.5;
  double a_hi = 3.0;
  int samples = 50;
  std::string criterion;
  std::vector<double> weights;
  std::vector<double> point;
  std::vector<double> c;
  std::vector<double> disagreement;
};

/// The game failed structural validation; exits with kInputError.
class GameRejected : public Error {
 public:
  using Error::Error;
};

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string list_text(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + csv_number(v[k]);
  return s;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg;
  cfg.seed = o.seed;
  return cfg;
}

MkeCheck mke_check(const Options& o) {
  MkeCheck check;
  check.a_hi = o.a_hi;
  check.residual_tol = o.tol;
  return check;
}

std::string validation_text(const ValidationReport& r) {
  std::string s = fmt::format("validation: {} ({} samples, declared sign {:+d}, detected sign {:+d})\n",
                              r.passed() ? "pass" : "FAIL", r.samples, r.declared_sign,
                              r.detected_sign);
  auto list = [&](const std::vector<Violation>& items, const char* label) {
    std::vector<ViolationKind> seen;
    for (const Violation& v : items) {
      if (std::find(seen.begin(), seen.end(), v.kind) != seen.end()) continue;
      seen.push_back(v.kind);
      const auto count = std::count_if(items.begin(), items.end(),
                                       [&](const Violation& w) { return w.kind == v.kind; });
      s += fmt::format("  {} {}: {} case(s), e.g. player {} at {} (value {:.4g})\n", label,
                       violation_name(v.kind), count, v.player + 1, vector_text(v.profile), v.value);
    }
  };
  list(r.violations, "violation");
  list(r.notes, "note");
  return s;
}

Game load_checked(const Options& o) {
  Game game = load_game_spec(o.game);
  const ValidationReport report = validate_game(game, o.samples, o.seed);
  if (!report.passed()) throw GameRejected("game is outside the supported class\n" + validation_text(report));
  return game;
}

// CSV goes to --out when given, else stdout; the text block goes to stdout
// when the CSV has its own file, else stderr.
class Sink {
 public:
  Sink(const Options& o, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (!o.out.empty()) {
      file_ = std::make_unique<std::ofstream>(o.out);
      if (!*file_) throw DomainError(fmt::format("cannot write '{}'", o.out));
    }
  }
  std::ostream& csv() { return file_ ? *file_ : out_; }
  std::ostream& text() { return file_ ? out_ : err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::unique_ptr<std::ofstream> file_;
};

ConfigEcho base_echo(const char* command, const Options& o) {
  return {{"command", command}, {"game", o.game}, {"seed", std::to_string(o.seed)}};
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream&) {
  const Game game = load_game_spec(o.game);
  const ValidationReport report = validate_game(game, o.samples, o.seed);
  out << fmt::format("game: {} with {} players\n", family_name(game.family()), game.players());
  out << validation_text(report);
  return report.passed() ? kSuccess : kInputError;
}

int cmd_frontier(const Options& o, std::ostream& out, std::ostream& err) {
  const Game game = load_checked(o);
  if (o.points < 1) throw DomainError("--points must be at least 1");
  const FrontierSweep sweep = sweep_frontier(game, o.points, solver_config(o));
  Sink sink(o, out, err);
  ConfigEcho echo = base_echo("frontier", o);
  echo.emplace_back("points", std::to_string(o.points));
  write_config_echo(sink.csv(), echo);
  write_frontier_csv(sink.csv(), game.players(), sweep.points);
  sink.text() << fmt::format("interior points: {}\nboundary rejections: {}\nduplicates: {}\n",
                             sweep.points.size(), sweep.boundary_rejections, sweep.duplicates);
  return kSuccess;
}

int cmd_realize(const Options& o, std::ostream& out, std::ostream& err) {
  const int given = !o.criterion.empty() + !o.weights.empty() + !o.point.empty();
  if (given != 1) throw DomainError("realize needs exactly one of --criterion, --weights, --point");
  const Game game = load_checked(o);
  const int n = game.players();
  const SolverConfig cfg = solver_config(o);

  ConfigEcho echo = base_echo("realize", o);
  ParetoPoint target;
  if (!o.criterion.empty()) {
    Criterion crit{parse_criterion(o.criterion), {}};
    if (!o.disagreement.empty()) crit.disagreement = to_vector(o.disagreement);
    target = select_point(game, crit, o.points, cfg).point;
    echo.emplace_back("criterion", std::string(criterion_name(crit.kind)));
    echo.emplace_back("points", std::to_string(o.points));
  } else if (!o.weights.empty()) {
    if (static_cast<int>(o.weights.size()) != n)
      throw DomainError(fmt::format("--weights needs {} entries", n));
    target = FrontierSampler(game, cfg).at(to_vector(o.weights));
    echo.emplace_back("weights", list_text(o.weights));
  } else {
    const Vector x = to_vector(o.point);
    require_profile(game, x);
    if (!is_interior(x)) throw NotEfficientError("--point must be strictly positive");
    const EfficiencyCertificate cert = certify_efficiency(game, x, 1e-6);
    if (!cert.accepted)
      throw NotEfficientError(fmt::format(
          "point {} is not Pareto efficient: certification residual {:.3e}, multipliers {}",
          vector_text(x), cert.residual, vector_text(cert.m)));
    target = ParetoPoint{x, cert.m, game.payoffs(x), cert.residual, Scalarization::WeightedSum, cert.m};
    echo.emplace_back("point", list_text(o.point));
  }
  echo.emplace_back("theta", csv_number(o.theta));
  echo.emplace_back("a_hi", csv_number(o.a_hi));
  echo.emplace_back("tol", csv_number(o.tol));

  Sink sink(o, out, err);
  ShiftPlan plan;
  int code = kSuccess;
  try {
    plan = build_shift(game, target, o.theta, cfg, mke_check(o));
  } catch (const ShiftVerificationError& e) {
    plan = e.plan();
    code = kVerificationFailed;
  }
  sink.text() << plan_text(plan);
  write_config_echo(sink.csv(), echo);
  write_plan_header(sink.csv(), n);
  write_plan_row(sink.csv(), plan);
  return code;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.point.empty()) throw DomainError("verify needs --profile");
  const Game game = load_checked(o);
  const Vector x = to_vector(o.point);
  require_profile(game, x);
  EquilibriumReport rep;
  if (o.c.empty()) {
    rep = verify_mke(game, x, solver_config(o), mke_check(o));
  } else {
    const Vector c = to_vector(o.c);
    if (c.size() != x.size()) throw DomainError("--c and --profile differ in length");
    if (((x - c).array() < 0.0).any()) throw DomainError("--profile must be >= --c componentwise");
    auto base = std::make_shared<Game>(game);
    const TransformedGame shifted = shifted_game(base, c);
    rep = verify_mke(shifted, x - c, solver_config(o), mke_check(o));
  }
  Sink sink(o, out, err);
  ConfigEcho echo = base_echo("verify", o);
  echo.emplace_back("profile", list_text(o.point));
  if (!o.c.empty()) echo.emplace_back("c", list_text(o.c));
  echo.emplace_back("a_hi", csv_number(o.a_hi));
  echo.emplace_back("tol", csv_number(o.tol));
  sink.text() << report_text(rep);
  write_config_echo(sink.csv(), echo);
  write_report_csv(sink.csv(), rep);
  return rep.verified() ? kSuccess : kVerificationFailed;
}

int cmd_equilibrium(const Options& o, std::ostream& out, std::ostream& err, EquilibriumKind kind) {
  const Game game = load_checked(o);
  const Vector x0 = o.point.empty() ? Vector::Ones(game.players()) : to_vector(o.point);
  const EquilibriumReport rep = kind == EquilibriumKind::MKE
                                    ? solve_mke(game, x0, solver_config(o), mke_check(o))
                                    : solve_nash(game, x0, solver_config(o));
  Sink sink(o, out, err);
  ConfigEcho echo = base_echo(kind == EquilibriumKind::MKE ? "mke" : "nash", o);
  echo.emplace_back("start", list_text(std::vector<double>(x0.begin(), x0.end())));
  sink.text() << report_text(rep);
  write_config_echo(sink.csv(), echo);
  write_report_csv(sink.csv(), rep);
  return rep.verified() ? kSuccess : kVerificationFailed;
}

int cmd_sweep_realize(const Options& o, std::ostream& out, std::ostream& err) {
  const Game game = load_checked(o);
  if (o.points < 1) throw DomainError("--points must be at least 1");
  const SolverConfig cfg = solver_config(o);
  const FrontierSweep sweep = sweep_frontier(game, o.points, cfg);

  Sink sink(o, out, err);
  ConfigEcho echo = base_echo("sweep-realize", o);
  echo.emplace_back("points", std::to_string(o.points));
  echo.emplace_back("theta", csv_number(o.theta));
  echo.emplace_back("a_hi", csv_number(o.a_hi));
  echo.emplace_back("tol", csv_number(o.tol));
  write_config_echo(sink.csv(), echo);
  write_plan_header(sink.csv(), game.players());

  std::size_t verified = 0;
  for (const ParetoPoint& p : sweep.points) {
    try {
      const ShiftPlan plan = build_shift(game, p, o.theta, cfg, mke_check(o));
      write_plan_row(sink.csv(), plan);
      ++verified;
    } catch (const ShiftVerificationError& e) {
      write_plan_row(sink.csv(), e.plan());
    } catch (const Error& e) {
      write_plan_error_row(sink.csv(), p.x, "error");
      sink.text() << "point " << vector_text(p.x) << ": " << e.what() << '\n';
    }
  }
  sink.text() << fmt::format("verified {}/{} plans ({} boundary rejections)\n", verified,
                             sweep.points.size(), sweep.boundary_rejections);
  return verified == sweep.points.size() && verified > 0 ? kSuccess : kVerificationFailed;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--game", o.game, "Game-spec JSON file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "Write CSV output to this file");
  sub->add_option("--seed", o.seed, "Seed for sampled checks");
  sub->add_option("--samples", o.samples, "Validation samples")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kantian equilibria and lower-bound shifts for concave social dilemmas", "kantian"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check a game against the supported class");
  add_common(validate, o);

  auto* frontier = app.add_subcommand("frontier", "Sample interior Pareto-efficient profiles");
  add_common(frontier, o);
  frontier->add_option("--points", o.points, "Number of weight vectors");

  auto* realize = app.add_subcommand("realize", "Build the lower-bound shift for one efficient point");
  add_common(realize, o);
  realize->add_option("--criterion", o.criterion,
                      "utilitarian | maximin | nash-bargaining | kalai-smorodinsky");
  realize->add_option("--weights", o.weights, "Scalarization weights w1,..,wn")->delimiter(',');
  realize->add_option("--point", o.point, "Explicit efficient profile x1,..,xn")->delimiter(',');
  realize->add_option("--disagreement", o.disagreement, "Bargaining disagreement payoffs")
      ->delimiter(',');
  realize->add_option("--points", o.points, "Frontier samples for the criterion");
  realize->add_option("--theta", o.theta, "Fraction of the maximal step, in (0,1)");
  realize->add_option("--a-hi", o.a_hi, "Upper end of the proportional-deviation scan");
  realize->add_option("--tol", o.tol, "Relative residual tolerance");

  auto* verify = app.add_subcommand("verify", "Check the MKE definition at a profile");
  add_common(verify, o);
  verify->add_option("--profile,--point", o.point, "Profile x1,..,xn")->delimiter(',');
  verify->add_option("--c", o.c, "Lower bounds c1,..,cn (default 0)")->delimiter(',');
  verify->add_option("--a-hi", o.a_hi, "Upper end of the proportional-deviation scan");
  verify->add_option("--tol", o.tol, "Relative residual tolerance");

  auto* nash = app.add_subcommand("nash", "Nash equilibrium by best-response iteration");
  add_common(nash, o);
  nash->add_option("--point", o.point, "Starting profile (default all ones)")->delimiter(',');

  auto* mke = app.add_subcommand("mke", "Solve the MKE first-order system by Newton's method");
  add_common(mke, o);
  mke->add_option("--point", o.point, "Starting profile (default all ones)")->delimiter(',');
  mke->add_option("--a-hi", o.a_hi, "Upper end of the proportional-deviation scan");
  mke->add_option("--tol", o.tol, "Relative residual tolerance");

  auto* sweep = app.add_subcommand("sweep-realize", "Shift and verify every sampled frontier point");
  add_common(sweep, o);
  sweep->add_option("--points", o.points, "Number of weight vectors");
  sweep->add_option("--theta", o.theta, "Fraction of the maximal step, in (0,1)");
  sweep->add_option("--a-hi", o.a_hi, "Upper end of the proportional-deviation scan");
  sweep->add_option("--tol", o.tol, "Relative residual tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out, err);
    if (frontier->parsed()) return cmd_frontier(o, out, err);
    if (realize->parsed()) return cmd_realize(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (nash->parsed()) return cmd_equilibrium(o, out, err, EquilibriumKind::Nash);
    if (mke->parsed()) return cmd_equilibrium(o, out, err, EquilibriumKind::MKE);
    if (sweep->parsed()) return cmd_sweep_realize(o, out, err);
  } catch (const GameRejected& e) {
    err << "error: " << e.what();
    return kInputError;
  } catch (const GameSpecError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "failed: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kInputError;
}

}  // namespace kantian::cli
