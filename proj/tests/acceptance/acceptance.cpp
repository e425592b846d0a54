// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs one criterion.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "kantian/cli.hpp"
#include "kantian/equilibrium.hpp"
#include "kantian/error.hpp"
#include "kantian/pareto.hpp"
#include "kantian/shift.hpp"

using namespace kantian;

namespace {

const std::string kGames = KANTIAN_GAMES_DIR;

struct Outcome {
  bool pass;
  std::string detail;
};

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) out[k++] = x;
  return out;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    rows.push_back(std::move(f));
  }
  return rows;
}

Outcome sweep_realize_all() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  for (const char* name : {"qpg", "qpg3", "cournot", "cournot3", "commons", "commons3"}) {
    std::ostringstream out, err;
    const int code = cli::run({"sweep-realize", "--game", kGames + "/" + name + ".json", "--points", "25"},
                              out, err);
    const auto rows = csv_rows(out.str());
    int ok = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& f = rows[r];
      const std::size_t n = (f.size() - 4) / 3;
      bool row_ok = f.back() == "verified" && std::stod(f[2 * n + 2]) <= 1e-9;
      for (std::size_t i = 0; i < n && row_ok; ++i)
        row_ok = std::abs(std::stod(f[2 * n + 3 + i]) - 1.0) <= 1e-3;
      ok += row_ok;
    }
    const int total = rows.empty() ? 0 : static_cast<int>(rows.size()) - 1;
    pass &= code == 0 && ok == 25 && total == 25;
    detail += fmt::format("{} {}/{}; ", name, ok, total);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  pass &= secs < 10.0;
  return {pass, detail + fmt::format("{:.2f}s", secs)};
}

Outcome orthogonality_random() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int done = 0, skipped = 0;
  double worst = 0.0;
  while (done < 200) {
    const int n = 2 + static_cast<int>(u(rng) * 2.0);
    const int family = static_cast<int>(u(rng) * 3.0);
    std::unique_ptr<Game> g;
    Vector a(n), b(n), c(n), w(n);
    for (int i = 0; i < n; ++i) {
      a[i] = 0.5 + 1.5 * u(rng);
      b[i] = 0.5 + 1.5 * u(rng);
      c[i] = 0.5 + 1.5 * u(rng);
      w[i] = 0.15 + u(rng);
    }
    if (family == 0)
      g = std::make_unique<Game>(Game::quadratic_public_goods(a, b, 0.1 + 0.7 * u(rng)));
    else if (family == 1)
      g = std::make_unique<Game>(Game::linear_cournot(8.0 + 6.0 * u(rng), 0.5 + u(rng), c));
    else
      g = std::make_unique<Game>(Game::commons(n, 0.2 + 0.6 * u(rng), 0.5));
    const double theta = 0.01 + 0.98 * u(rng);
    try {
      const ParetoPoint p = FrontierSampler(*g, SolverConfig{}).at(w);
      const ShiftPlan plan = build_shift(*g, p, theta, SolverConfig{});
      worst = std::max(worst, relative_residual(g->gradient(plan.x_p), plan.x_p - plan.c));
      ++done;
    } catch (const ShiftVerificationError& e) {
      worst = std::max(worst, e.plan().orthogonality);
      ++done;
    } catch (const Error&) {
      ++skipped;
    }
  }
  return {worst <= 1e-9 && skipped == 0,
          fmt::format("200 triples, worst relative residual {:.3e}, {} draws skipped", worst, skipped)};
}

Outcome worked_instance() {
  const Game g = Game::quadratic_public_goods(2, 1, 1, 0.5);
  const ParetoPoint p = scalarize(g, vec({2.0 / 3, 1.0 / 3}), SolverConfig{});
  const TangentLine t = tangent_line_2d(g, p);
  const ShiftPlan plan = build_shift(g, p, 0.5, SolverConfig{});
  const bool pass = std::abs(p.x[0] - 1.25) <= 1e-6 && std::abs(p.x[1] - 2) <= 1e-6 &&
                    std::abs(t.slope - 2) <= 1e-8 && std::abs(t.intercept + 2.75) <= 1e-8 &&
                    std::abs(plan.c[0] - 0.625) <= 1e-6 && std::abs(plan.c[1] - 1.6875) <= 1e-6;
  return {pass, fmt::format("x_p=({:.9f},{:.9f}) slope={:.10f} intercept={:.10f} c=({:.9f},{:.9f})",
                            p.x[0], p.x[1], t.slope, t.intercept, plan.c[0], plan.c[1])};
}

std::vector<std::shared_ptr<Game>> families() {
  std::vector<std::shared_ptr<Game>> out;
  for (const char* name : {"qpg", "qpg3", "cournot", "cournot3", "commons", "commons3"})
    out.push_back(std::make_shared<Game>(cli::load_game_spec(kGames + "/" + name + ".json")));
  return out;
}

Outcome mke_efficiency_both_ways() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.1, 4.0);
  int found = 0, bad_a = 0, checked = 0, bad_b = 0;
  for (const auto& g : families()) {
    for (int s = 0; s < 20; ++s) {
      Vector x0(g->players());
      for (auto& xi : x0) xi = u(rng);
      try {
        const EquilibriumReport r = solve_mke(*g, x0, SolverConfig{});
        if (!is_interior(r.x)) continue;
        ++found;
        bad_a += !certify_efficiency(*g, r.x, 1e-5).accepted;
      } catch (const DegenerateRootError&) {
      } catch (const NonConvergenceError&) {
      }
    }
    MkeCheck check;
    check.residual_tol = 1e-8;
    auto test_point = [&](const GameModel& game, const Vector& x) {
      if (relative_residual(game.gradient(x), x) > 1e-8) return;
      ++checked;
      bad_b += !verify_mke(game, x, SolverConfig{}, check).verified();
    };
    for (const ParetoPoint& p : sweep_frontier(*g, 25, SolverConfig{}).points) {
      test_point(*g, p.x);
      const ShiftPlan plan = build_shift(*g, p, 0.5, SolverConfig{});
      const TransformedGame shifted = shifted_game(g, plan.c);
      if (certify_efficiency(shifted, plan.z_star, 1e-6).accepted) test_point(shifted, plan.z_star);
    }
  }
  return {found > 0 && bad_a == 0 && checked > 0 && bad_b == 0,
          fmt::format("(a) {} positive MKE, {} uncertified; (b) {} zero-residual frontier points, {} unverified",
                      found, bad_a, checked, bad_b)};
}

Outcome nash_baseline() {
  const Game q = Game::quadratic_public_goods(2, 1, 1, 0.5);
  const EquilibriumReport nash = solve_nash(q, Vector::Ones(2), SolverConfig{});
  const EquilibriumReport mke = solve_mke(q, Vector::Ones(2), SolverConfig{});
  const Vector un = q.payoffs(vec({1, 1}));
  const Vector um = q.payoffs(vec({1.5, 1.5}));
  const EquilibriumReport cournot = solve_nash(Game::linear_cournot(2, 10, 1, 1), Vector::Ones(2), SolverConfig{});
  const bool pass = (nash.x - vec({1, 1})).cwiseAbs().maxCoeff() <= 1e-9 && un == vec({1, 1}) &&
                    (mke.x - vec({1.5, 1.5})).cwiseAbs().maxCoeff() <= 1e-9 && um == vec({1.125, 1.125}) &&
                    dominates(um, un, 0.0) && (um.array() > un.array()).all() &&
                    (cournot.x.array() - 3.0).abs().maxCoeff() <= 1e-6;
  return {pass, fmt::format("Nash {} payoffs {}; MKE {} payoffs {}; Cournot Nash ({:.9f},{:.9f})",
                            "(" + fmt::format("{:.9f},{:.9f}", nash.x[0], nash.x[1]) + ")",
                            fmt::format("({},{})", un[0], un[1]),
                            "(" + fmt::format("{:.9f},{:.9f}", mke.x[0], mke.x[1]) + ")",
                            fmt::format("({},{})", um[0], um[1]), cournot.x[0], cournot.x[1])};
}

Outcome non_equivalence() {
  auto base = std::make_shared<Game>(Game::quadratic_public_goods(2, 1, 1, 0.5));
  const Vector ref = vec({1.5, 1.5});
  double uniform_dev = 0.0;
  for (double lambda : {0.25, 0.5, 2.0, 4.0}) {
    const TransformedGame t = reparametrize_affine(base, Vector::Constant(2, lambda), Vector::Zero(2));
    const EquilibriumReport r = solve_mke(t, t.from_base(Vector::Ones(2)), SolverConfig{});
    uniform_dev = std::max(uniform_dev, (t.to_base(r.x) - ref).cwiseAbs().maxCoeff());
  }
  const TransformedGame t = reparametrize_affine(base, vec({2, 1}), Vector::Zero(2));
  const EquilibriumReport r = solve_mke(t, t.from_base(Vector::Ones(2)), SolverConfig{});
  const Vector back = t.to_base(r.x);
  const double aniso_dev = (back - ref).cwiseAbs().maxCoeff();
  return {uniform_dev <= 1e-6 && aniso_dev > 1e-3,
          fmt::format("uniform scale max deviation {:.3e}; scale (2,1) maps back to ({:.9f},{:.9f}), "
                      "deviation {:.3e} (needs > 1e-3)",
                      uniform_dev, back[0], back[1], aniso_dev)};
}

Outcome hygiene() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  double worst_fd = 0.0;
  for (const auto& g : families()) {
    for (int s = 0; s < 100; ++s) {
      Vector x(g->players());
      for (auto& xi : x) xi = u(rng);
      const GradientMatrix a = g->gradient(x);
      const GradientMatrix f = finite_difference_gradient(*g, x, 1e-5);
      worst_fd = std::max(worst_fd, (a - f).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
    }
  }
  // Every verify call runs golden section and the grid oracle; disagreement throws.
  int calls = 0, disagreements = 0;
  for (const auto& g : families()) {
    for (const ParetoPoint& p : sweep_frontier(*g, 10, SolverConfig{}).points) {
      try {
        verify_mke(*g, p.x, SolverConfig{});
      } catch (const NonUnimodalError&) {
        ++disagreements;
      }
      calls += g->players();
    }
  }
  std::uniform_real_distribution<double> peak(0.0, 3.0);
  for (int s = 0; s < 200; ++s) {
    const double a0 = peak(rng);
    try {
      const double a = argmax_1d([&](double a) { return -(a - a0) * (a - a0); }, 0, 3, SolverConfig{});
      disagreements += std::abs(a - a0) > 1e-6;
    } catch (const NonUnimodalError&) {
      ++disagreements;
    }
    ++calls;
  }
  bool identical = true;
  for (const char* cmd : {"frontier", "sweep-realize"}) {
    for (const char* name : {"qpg3", "cournot", "commons3"}) {
      std::string first;
      for (int rep = 0; rep < 3; ++rep) {
        std::ostringstream out, err;
        cli::run({cmd, "--game", kGames + "/" + name + ".json", "--points", "15", "--seed", "7"}, out, err);
        if (rep == 0)
          first = out.str();
        else
          identical &= out.str() == first && !first.empty();
      }
    }
  }
  return {worst_fd <= 1e-6 && disagreements == 0 && identical,
          fmt::format("fd gradient worst {:.3e}; {} line maximizations, {} disagreements; CSV reruns {}",
                      worst_fd, calls, disagreements, identical ? "byte-identical" : "DIFFER")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k)
    if (std::strcmp(argv[k], "--only") == 0 && k + 1 < argc) only = std::atoi(argv[++k]);

  const std::vector<Criterion> criteria = {
      {1, "sweep-realize verifies every frontier plan", sweep_realize_all},
      {2, "orthogonality under shift for random theta", orthogonality_random},
      {3, "worked quadratic instance", worked_instance},
      {4, "MKE and efficiency in both directions", mke_efficiency_both_ways},
      {5, "Nash baseline and domination", nash_baseline},
      {6, "parametrization dependence of the MKE", non_equivalence},
      {7, "numerical hygiene", hygiene},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << fmt::format("[{}] criterion {}: {} | {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail);
  }
  return failed ? 1 : 0;
}
