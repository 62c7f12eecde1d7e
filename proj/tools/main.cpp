#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mapgrowth/cw_spaces.hpp"
#include "mapgrowth/graded_lie.hpp"
#include "mapgrowth/growth_count.hpp"
#include "mapgrowth/json_io.hpp"
#include "mapgrowth/lip_cost.hpp"
#include "mapgrowth/svg_plot.hpp"

namespace {

using namespace mapgrowth;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct SpaceOpts {
  std::string space;
  std::string r;
  int ell = 0;
  int m = 0;
  long long p = 0;
  long long q = 0;
};

void add_space_options(CLI::App* cmd, SpaceOpts& opts, bool allow_box) {
  std::string desc = "space preset: example1, example2, theorem32 (needs --l --m --p --q)";
  if (allow_box) desc += ", box (needs --l --m)";
  cmd->add_option("--space", opts.space, desc);
  cmd->add_option("--r", opts.r, "rational growth exponent > 4 (picks a theorem32 space)");
  cmd->add_option("--l", opts.ell, "first sphere dimension");
  cmd->add_option("--m", opts.m, "second sphere dimension");
  cmd->add_option("--p", opts.p, "first monomial exponent");
  cmd->add_option("--q", opts.q, "second monomial exponent");
}

struct ResolvedSpace {
  std::optional<ComplexSpec> spec;  // absent for box systems
  ConstraintSystem sys;
};

ResolvedSpace resolve_space(const SpaceOpts& opts, bool allow_box) {
  ResolvedSpace out;
  if (!opts.r.empty()) {
    if (!opts.space.empty() && opts.space != "theorem32")
      throw std::invalid_argument("--r only selects theorem32 spaces; drop --space");
    const SpaceParameters params = solve_parameters(parse_rational(opts.r));
    out.spec = build_space(Family::theorem32, params.ell, params.m, params.p, params.q);
  } else if (opts.space == "example1" || opts.space == "example2") {
    out.spec = make_preset(opts.space);
  } else if (opts.space == "theorem32") {
    out.spec = build_space(Family::theorem32, opts.ell, opts.m, opts.p, opts.q);
  } else if (opts.space == "box") {
    if (!allow_box) throw std::invalid_argument("this command needs an attaching class; box has none");
    out.sys = box_system(opts.ell, opts.m);
    return out;
  } else if (opts.space.empty()) {
    throw std::invalid_argument("select a space with --space or --r");
  } else {
    throw std::invalid_argument("unknown space '" + opts.space + "'");
  }
  out.sys = derive_constraints(*out.spec);
  return out;
}

int cmd_solve(const std::string& r_text) {
  const Rational r = parse_rational(r_text);
  const SpaceParameters params = solve_parameters(r);
  const ComplexSpec spec = build_space(Family::theorem32, params.ell, params.m, params.p, params.q);
  const ClosedForm cf = closed_form_exponent(derive_constraints(spec));
  json j = spec_to_json(spec);
  j["r"] = rational_to_string(r);
  j["exponent"] = rational_to_string(cf.exponent);
  j["has_log"] = cf.has_log;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_count(const SpaceOpts& opts, long long L, const CountOptions& copts) {
  const ResolvedSpace rs = resolve_space(opts, /*allow_box=*/true);
  std::cout << count_pairs(rs.sys, L, copts).str() << "\n";
  return kExitOk;
}

int cmd_estimate(const SpaceOpts& opts, long long lmin, long long lmax, int points,
                 const std::string& spacing, const CountOptions& copts, int workers,
                 const std::string& out_dir) {
  const ResolvedSpace rs = resolve_space(opts, /*allow_box=*/true);
  GridSpacing gs;
  if (spacing == "log")
    gs = GridSpacing::log;
  else if (spacing == "linear")
    gs = GridSpacing::linear;
  else
    throw std::invalid_argument("--spacing must be log or linear");

  const std::vector<long long> grid = make_grid(lmin, lmax, points, gs);
  std::filesystem::create_directories(out_dir);
  const auto csv_path = std::filesystem::path(out_dir) / "samples.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  csv << "L,count\n" << std::flush;

  const std::vector<GrowthSample> samples =
      sample_grid(rs.sys, grid, copts, workers, [&](const GrowthSample& s) {
        csv << s.L << "," << s.count.str() << "\n" << std::flush;
      });

  const FitResult fit = fit_growth(samples);
  const json fit_json = fit_to_json(fit);
  {
    std::ofstream f(std::filesystem::path(out_dir) / "fit.json");
    f << fit_json.dump(2) << "\n";
  }
  {
    std::string title = opts.space.empty() ? ("r=" + opts.r) : opts.space;
    std::ofstream f(std::filesystem::path(out_dir) / "plot.svg");
    f << render_loglog_svg(samples, fit, "growth of " + title);
  }
  std::cout << fit_json.dump(2) << "\n";
  return kExitOk;
}

int cmd_hall(const std::string& degrees_csv, int max_degree) {
  if (max_degree < 1 || max_degree > 32)
    throw std::invalid_argument("max degree must lie in [1, 32]");
  std::vector<int> degrees;
  std::string token;
  std::istringstream in(degrees_csv);
  while (std::getline(in, token, ',')) {
    try {
      degrees.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad degree '" + token + "' in list");
    }
  }
  if (degrees.empty()) throw std::invalid_argument("empty degree list");

  // Refuse degree/generator combinations whose basis would not fit in memory;
  // the tensor-algebra series bounds every graded dimension from above.
  {
    std::vector<BigInt> series(static_cast<std::size_t>(max_degree) + 1, 0);
    series[0] = 1;
    BigInt total = 0;
    for (int n = 1; n <= max_degree; ++n) {
      for (int d : degrees)
        if (d >= 1 && n >= d) series[static_cast<std::size_t>(n)] += series[static_cast<std::size_t>(n - d)];
      total += series[static_cast<std::size_t>(n)];
    }
    if (total > 2'000'000)
      throw std::invalid_argument("basis through degree " + std::to_string(max_degree) +
                                  " is too large to enumerate");
  }

  static const char* kShortNames[] = {"x", "y", "z"};
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) throw std::invalid_argument("generator degrees must be at least 1");
    const std::string name =
        degrees.size() <= 3 ? kShortNames[i] : "g" + std::to_string(i + 1);
    gens.push_back(make_generator(name, degrees[i] + 1));
  }
  LieAlgebra alg(std::move(gens));

  const std::vector<TreeId> basis = alg.hall_basis(max_degree);
  int current = 0;
  for (TreeId t : basis) {
    const int d = alg.lie_degree(t);
    if (d != current) {
      if (current != 0) std::cout << "\n";
      current = d;
      std::cout << "degree " << d << ":";
    }
    std::cout << " " << alg.to_string(t);
  }
  if (current != 0) std::cout << "\n";

  const HilbertReport report = alg.hilbert_check(max_degree);
  std::cout << "degree dim product series\n";
  for (const HilbertRow& row : report.rows)
    std::cout << row.degree << " " << row.basis_dim << " " << row.product_coeff.str() << " "
              << row.series_coeff.str() << "\n";
  if (!report.ok) {
    std::cout << "hilbert check: MISMATCH at degree " << report.first_mismatch << "\n";
    return kExitVerificationFailed;
  }
  std::cout << "hilbert check: ok\n";
  return kExitOk;
}

int cmd_verify_zeta(const SpaceOpts& opts) {
  const ResolvedSpace rs = resolve_space(opts, /*allow_box=*/false);
  const ComplexSpec& spec = *rs.spec;
  const EmbedCertificate cert = spec.algebra->certify_nonzero(spec.zeta);

  std::string verdict;
  switch (cert.verdict) {
    case EmbedVerdict::nonzero: verdict = "nonzero"; break;
    case EmbedVerdict::zero: verdict = "zero"; break;
    case EmbedVerdict::inconclusive: verdict = "inconclusive"; break;
  }
  std::string witness;
  for (std::size_t i = 0; i < cert.witness.size(); ++i) {
    if (i) witness += ".";
    witness += spec.algebra->generator(cert.witness[static_cast<std::size_t>(i)]).name;
  }
  json j{{"family", family_name(spec.family)},
         {"zeta", tree_to_json(*spec.algebra, spec.zeta)},
         {"hall", spec.algebra->is_hall(spec.zeta)},
         {"verdict", verdict},
         {"witness", witness},
         {"coeff", rational_to_string(cert.coeff)}};
  std::cout << j.dump(2) << "\n";
  return cert.verdict == EmbedVerdict::nonzero ? kExitOk : kExitVerificationFailed;
}

int cmd_budget(const SpaceOpts& opts, std::vector<long long> Ls, const std::string& eps_text,
               int trials, std::uint64_t seed, long long C, const std::string& out_dir) {
  if (opts.space != "example1" && opts.space != "example2")
    throw std::invalid_argument("budget checks exist for --space example1 or example2");
  const ComplexSpec spec = make_preset(opts.space);
  if (Ls.empty()) Ls = {10, 100, 1000};
  const Rational eps = parse_rational(eps_text);

  const SweepResult sweep = run_budget_sweep(spec, Ls, eps, trials, seed, C);

  std::vector<std::string> failed;
  json reports = json::array();
  for (const BudgetReport& r : sweep.reports) {
    reports.push_back(budget_report_to_json(r));
    for (const BudgetStage& s : r.stages)
      if (!s.pass) failed.push_back(s.name + " at L=" + std::to_string(r.L));
  }
  json slopes = json::array();
  for (const SweepStageSlope& s : sweep.slopes) {
    slopes.push_back(json{{"name", s.name},
                          {"slope", s.slope},
                          {"in_slope_analysis", s.in_slope_analysis}});
    std::cout << "stage " << s.name << ": slope=" << s.slope
              << (s.in_slope_analysis ? "" : " (excluded from slope analysis)") << "\n";
  }

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(std::filesystem::path(out_dir) / "report.json");
    f << json{{"space", opts.space}, {"eps", rational_to_string(eps)},
              {"seed", seed},        {"trials", trials},
              {"reports", reports},  {"slopes", slopes},
              {"all_pass", sweep.all_pass}}
             .dump(2)
      << "\n";
  }
  if (!sweep.all_pass) {
    std::cout << "budget: FAIL (" << failed.size() << " stage failures, first: " << failed.front()
              << ")\n";
    return kExitVerificationFailed;
  }
  std::cout << "budget: PASS (" << sweep.reports.size() << " trials over " << Ls.size()
            << " scales)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth of mapping class sets between sphere wedges and two-cell complexes"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // solve
  auto* solve = app.add_subcommand("solve", "find space parameters realizing a growth exponent");
  std::string solve_r;
  solve->add_option("--r", solve_r, "rational growth exponent > 4")->required();
  solve->callback([&] { exit_code = cmd_solve(solve_r); });

  // count
  auto* count = app.add_subcommand("count", "exact mapping-pair count at one scale");
  SpaceOpts count_space;
  add_space_options(count, count_space, true);
  long long count_L = 0;
  CountOptions count_opts;
  count->add_option("--L", count_L, "scale")->required();
  count->add_flag("--blocked", count_opts.blocked, "aggregate constant-cap runs instead of scanning");
  count->add_option("--budget", count_opts.budget, "direct-mode iteration budget");
  count->callback([&] { exit_code = cmd_count(count_space, count_L, count_opts); });

  // estimate
  auto* estimate = app.add_subcommand("estimate", "measure growth over a grid and fit an exponent");
  SpaceOpts est_space;
  add_space_options(estimate, est_space, true);
  long long est_lmin = 16, est_lmax = 256;
  int est_points = 9, est_workers = 1;
  std::string est_spacing = "log", est_out = ".";
  CountOptions est_opts;
  estimate->add_option("--lmin", est_lmin, "smallest scale");
  estimate->add_option("--lmax", est_lmax, "largest scale");
  estimate->add_option("--points", est_points, "number of grid points");
  estimate->add_option("--spacing", est_spacing, "grid spacing: log or linear");
  estimate->add_flag("--blocked", est_opts.blocked, "aggregate constant-cap runs instead of scanning");
  estimate->add_option("--budget", est_opts.budget, "direct-mode iteration budget");
  estimate->add_option("--workers", est_workers, "worker threads");
  estimate->add_option("--out", est_out, "output directory for samples.csv, fit.json, plot.svg");
  estimate->callback([&] {
    exit_code = cmd_estimate(est_space, est_lmin, est_lmax, est_points, est_spacing, est_opts,
                             est_workers, est_out);
  });

  // hall
  auto* hall = app.add_subcommand("hall", "enumerate a graded Hall basis and check dimensions");
  std::string hall_degrees;
  int hall_max = 0;
  hall->add_option("degrees", hall_degrees, "comma-separated generator degrees, e.g. 2,3")
      ->required();
  hall->add_option("max_degree", hall_max, "largest degree to enumerate (at most 32)")->required();
  hall->callback([&] { exit_code = cmd_hall(hall_degrees, hall_max); });

  // verify-zeta
  auto* verify = app.add_subcommand("verify-zeta", "certify the attaching class is nonzero");
  SpaceOpts verify_space;
  add_space_options(verify, verify_space, false);
  verify->callback([&] { exit_code = cmd_verify_zeta(verify_space); });

  // budget
  auto* budget = app.add_subcommand("budget", "verify Lipschitz budget claims on random inputs");
  SpaceOpts budget_space;
  add_space_options(budget, budget_space, false);
  std::vector<long long> budget_Ls;
  std::string budget_eps = "1/5", budget_out = ".";
  int budget_trials = 100;
  std::uint64_t budget_seed = 12345;
  long long budget_C = 8;
  budget->add_option("--L", budget_Ls, "scales to test (repeatable; default 10 100 1000)");
  budget->add_option("--eps", budget_eps, "rational margin in (0,1)");
  budget->add_option("--trials", budget_trials, "random (a,b) pairs per scale");
  budget->add_option("--seed", budget_seed, "RNG seed");
  budget->add_option("--C", budget_C, "budget constant");
  budget->add_option("--out", budget_out, "output directory for report.json");
  budget->callback([&] {
    exit_code = cmd_budget(budget_space, budget_Ls, budget_eps, budget_trials, budget_seed,
                           budget_C, budget_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const mapgrowth::ResourceGuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
  return exit_code;
}
