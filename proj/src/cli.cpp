#include "tz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tz/error.hpp"
#include "tz/fft.hpp"
#include "tz/hierarchy.hpp"
#include "tz/hodlr.hpp"
#include "tz/hss.hpp"
#include "tz/json_io.hpp"
#include "tz/oracle.hpp"
#include "tz/pipeline.hpp"
#include "tz/spectral.hpp"
#include "tz/toeplitz.hpp"
#include "tz/ulv.hpp"
#include "tz/zolotarev.hpp"

namespace tz::cli {
namespace {

using nlohmann::json;

int exit_code_for(errc code) {
  switch (code) {
    case errc::io:
      return 4;
    case errc::shift_collision:
    case errc::rank_deficient:
    case errc::singular:
    case errc::singular_block:
    case errc::numerically_singular:
    case errc::map_validation:
      return 3;
    default:
      return 2;
  }
}

void emit_error(const std::string& code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

ToeplitzOperator random_toeplitz(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> col(n), row(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = dist(rng);
  for (std::size_t i = 0; i < n; ++i) row[i] = dist(rng);
  row[0] = col[0];
  return make_toeplitz(std::move(col), std::move(row));
}

std::vector<cplx> random_rhs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = dist(rng);
  return b;
}

json report_to_json(const SolveReport& r) {
  json j;
  j["n"] = r.n;
  j["rho"] = r.rho;
  j["eps"] = r.eps;
  j["format"] = r.format;
  j["times"] = {{"transform_s", r.t_transform},
                {"compress_s", r.t_compress},
                {"solve_s", r.t_solve}};
  j["max_rank"] = r.max_rank;
  j["rank_bound"] = r.rank_bound;
  if (r.verify_residual >= 0.0) j["verify_residual"] = r.verify_residual;
  return j;
}

void write_or_print(const std::string& path, const json& j) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  require(out.good(), errc::io, "write failed for " + path);
}

struct CommonOpts {
  double tol{1e-8};
  std::size_t n_min{64};
  int threads{0};
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--tol", c.tol, "target relative accuracy, in (0,1)");
  cmd->add_option("--n-min", c.n_min, "leaf block size (power of two)");
  cmd->add_option("--threads", c.threads, "thread cap (current build is single-threaded)");
}

void validate_common(const CommonOpts& c) {
  require(c.tol > 0.0 && c.tol < 1.0, errc::config, "--tol must be in (0,1)");
  if (c.threads == 0) {
    if (const char* env = std::getenv("TZSOLVE_THREADS")) (void)std::atoi(env);
  }
}

double measured_spectral_error(const CauchyLikeOperator& cop, const Matrix& approx) {
  Matrix dense = dense_cauchy(cop);
  const double nrm = spectral_norm(dense);
  Matrix diff = dense - approx;
  return nrm > 0.0 ? spectral_norm(diff) / nrm : spectral_norm(diff);
}

int cmd_solve(const std::string& matrix_path, const std::string& rhs_path,
              const std::string& out_path, const CommonOpts& c, const std::string& format,
              bool verify) {
  validate_common(c);
  ToeplitzOperator t = read_toeplitz_json(matrix_path);
  std::vector<cplx> b = read_vector_json(rhs_path);
  SolveOptions opt;
  opt.n_min = c.n_min;
  opt.format = format == "hodlr" ? Format::hodlr : Format::hss;
  opt.verify = verify;
  auto [x, report] = solve_toeplitz(t, b, c.tol, opt);
  json j;
  json xs = json::array();
  for (const cplx& z : x) xs.push_back({z.real(), z.imag()});
  j["x"] = std::move(xs);
  j["report"] = report_to_json(report);
  write_or_print(out_path, j);
  return 0;
}

int cmd_compress(const std::string& matrix_path, const CommonOpts& c, const std::string& format,
                 bool fast, bool leaf_accel, bool verify, const std::string& stats_path,
                 std::size_t n_rand, std::uint64_t seed) {
  validate_common(c);
  ToeplitzOperator t =
      matrix_path.empty() ? random_toeplitz(n_rand, seed) : read_toeplitz_json(matrix_path);
  const std::size_t n = t.n();
  CauchyLikeOperator cop = to_cauchy_like(t);
  const ClusterTree tree = build_tree(n, std::min(c.n_min, n / 2));
  json stats;
  stats["n"] = n;
  stats["eps"] = c.tol;
  stats["format"] = format;
  const double eps_v = clamp_eps(c.tol) / std::log2(static_cast<double>(n));
  json levels = json::array();
  if (format == "hodlr") {
    HODLRMatrix h = fast ? hodlr_compress_fast(cop, tree, c.tol) : hodlr_compress(cop, tree, c.tol);
    for (std::size_t lvl = 1; lvl <= tree.depth(); ++lvl) {
      std::size_t rmax = 0;
      for (std::size_t v : tree.level_vertices(lvl)) rmax = std::max(rmax, h.rank[v]);
      const std::size_t m = tree.range(tree.level_vertices(lvl)[0]).size;
      levels.push_back({{"level", lvl},
                        {"m", m},
                        {"max_rank", rmax},
                        {"bound_rank", epsilon_rank_bound(cop.rho(), m, 1, eps_v)}});
    }
    stats["max_rank"] = h.max_rank();
    if (verify && n <= 2048) stats["measured_error"] = measured_spectral_error(cop, hodlr_to_dense(h));
  } else {
    require(format == "hss", errc::config, "--format must be hodlr or hss");
    HSSMatrix h = hss_compress(cop, tree, c.tol, leaf_accel);
    for (std::size_t lvl = 1; lvl <= tree.depth(); ++lvl) {
      std::size_t rmax = 0;
      for (std::size_t v : tree.level_vertices(lvl))
        rmax = std::max({rmax, h.nodes[v].Jsel.size(), h.nodes[v].Ksel.size()});
      const std::size_t m = tree.range(tree.level_vertices(lvl)[0]).size;
      levels.push_back({{"level", lvl},
                        {"m", m},
                        {"max_rank", rmax},
                        {"bound_rank", hss_rank_bound(cop.rho(), n, clamp_eps(c.tol))}});
    }
    stats["max_rank"] = h.max_rank();
    if (verify && n <= 2048) stats["measured_error"] = measured_spectral_error(cop, hss_to_dense(h));
  }
  stats["levels"] = std::move(levels);
  write_or_print(stats_path, stats);
  return 0;
}

int cmd_ranks(std::size_t n, std::size_t rho, double eps, std::size_t sep, std::size_t n_min) {
  require(eps > 0.0 && eps < 1.0, errc::config, "--eps must be in (0,1)");
  require(is_power_of_two(n) && n >= 4, errc::config, "--n must be a power of two, n >= 4");
  const ClusterTree tree = build_tree(n, std::min(n_min, n / 2));
  std::printf("level,m,sep,bound_rank\n");
  for (std::size_t lvl = 1; lvl <= tree.depth(); ++lvl) {
    const std::size_t m = n >> lvl;
    std::printf("%zu,%zu,%zu,%zu\n", lvl, m, sep, epsilon_rank_bound(rho, m, sep, eps));
  }
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& sizes, const CommonOpts& c, std::uint64_t seed,
              bool verify) {
  validate_common(c);
  std::printf("n,build_s,solve_s,rank_max,resid\n");
  for (std::size_t n : sizes) {
    require(is_power_of_two(n) && n >= 4, errc::config, "bench sizes must be powers of two");
    ToeplitzOperator t = random_toeplitz(n, seed);
    std::vector<cplx> b = random_rhs(n, seed + 1);
    SolveOptions opt;
    opt.n_min = c.n_min;
    opt.verify = verify;
    auto [x, report] = solve_toeplitz(t, b, c.tol, opt);
    (void)x;
    if (report.verify_residual >= 0.0)
      std::printf("%zu,%.6f,%.6f,%zu,%.3e\n", n, report.t_compress,
                  report.t_transform + report.t_solve, report.max_rank, report.verify_residual);
    else
      std::printf("%zu,%.6f,%.6f,%zu,\n", n, report.t_compress,
                  report.t_transform + report.t_solve, report.max_rank);
  }
  return 0;
}

int cmd_verify(const std::string& matrix_path, const CommonOpts& c, std::size_t n_rand,
               std::uint64_t seed) {
  validate_common(c);
  ToeplitzOperator t =
      matrix_path.empty() ? random_toeplitz(n_rand, seed) : read_toeplitz_json(matrix_path);
  const std::size_t n = t.n();
  require(n <= 2048, errc::config, "verify runs under the dense size guard (n <= 2048)");
  CauchyLikeOperator cop = to_cauchy_like(t);
  const ClusterTree tree = build_tree(n, std::min(c.n_min, n / 2));
  json out;
  out["n"] = n;
  out["eps"] = c.tol;
  const double hodlr_err = measured_spectral_error(cop, hodlr_to_dense(hodlr_compress(cop, tree, c.tol)));
  const double hss_err = measured_spectral_error(cop, hss_to_dense(hss_compress(cop, tree, c.tol)));
  out["hodlr_error"] = hodlr_err;
  out["hss_error"] = hss_err;
  std::vector<cplx> b = random_rhs(n, seed + 1);
  SolveOptions opt;
  opt.n_min = c.n_min;
  opt.verify = true;
  auto [x, report] = solve_toeplitz(t, b, c.tol, opt);
  (void)x;
  out["solve_residual"] = report.verify_residual;
  const bool ok = hodlr_err <= c.tol && hss_err <= 10.0 * c.tol &&
                  report.verify_residual <= 100.0 * c.tol;
  out["ok"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 3;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"tzsolve: superfast Toeplitz solver via Cauchy-like hierarchical compression"};
  app.require_subcommand(1);

  CommonOpts c;
  std::string matrix_path, rhs_path, out_path, stats_path;
  std::string format = "hss";
  bool fast = false, leaf_accel = false, verify = false;
  std::size_t ranks_n = 1024, ranks_rho = 2, ranks_sep = 1;
  double ranks_eps = 1e-8;
  std::size_t n_rand = 1024;
  std::uint64_t seed = 1;
  std::vector<std::size_t> bench_sizes{1024, 2048, 4096};

  CLI::App* solve = app.add_subcommand("solve", "solve T x = b");
  solve->add_option("--matrix", matrix_path, "Toeplitz matrix JSON")->required();
  solve->add_option("--rhs", rhs_path, "right-hand side JSON")->required();
  solve->add_option("--out", out_path, "output path (stdout when omitted)");
  solve->add_option("--format", format, "hss (default; hodlr refuses to solve)");
  solve->add_flag("--verify", verify, "dense residual check (size-guarded)");
  add_common(solve, c);

  CLI::App* compress = app.add_subcommand("compress", "compress and report stats");
  compress->add_option("--matrix", matrix_path, "Toeplitz matrix JSON (random when omitted)");
  compress->add_option("--format", format, "hodlr or hss");
  compress->add_flag("--fast", fast, "HODLR: one fADI per level");
  compress->add_flag("--leaf-accel", leaf_accel, "HSS: leaf-level base-matrix reuse");
  compress->add_flag("--verify", verify, "measure dense error (n <= 2048)");
  compress->add_option("--stats", stats_path, "stats JSON path (stdout when omitted)");
  compress->add_option("--n", n_rand, "size for the random instance");
  compress->add_option("--seed", seed, "seed for the random instance");
  add_common(compress, c);

  CLI::App* ranks = app.add_subcommand("ranks", "a priori rank bounds per level");
  ranks->add_option("--n", ranks_n, "dimension")->required();
  ranks->add_option("--rho", ranks_rho, "displacement rank");
  ranks->add_option("--eps", ranks_eps, "target accuracy");
  ranks->add_option("--sep", ranks_sep, "block separation");
  ranks->add_option("--n-min", c.n_min, "leaf block size");

  CLI::App* bench = app.add_subcommand("bench", "timing sweep on random instances");
  bench->add_option("--sizes", bench_sizes, "problem sizes (powers of two)");
  bench->add_option("--seed", seed, "PRNG seed (recorded in output)");
  bench->add_flag("--verify", verify, "include dense residual column");
  add_common(bench, c);

  CLI::App* ver = app.add_subcommand("verify", "dense-oracle verification suite");
  ver->add_option("--matrix", matrix_path, "Toeplitz matrix JSON (random when omitted)");
  ver->add_option("--n", n_rand, "size for the random instance");
  ver->add_option("--seed", seed, "seed for the random instance");
  add_common(ver, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(matrix_path, rhs_path, out_path, c, format, verify);
    if (compress->parsed())
      return cmd_compress(matrix_path, c, format, fast, leaf_accel, verify, stats_path, n_rand,
                          seed);
    if (ranks->parsed()) return cmd_ranks(ranks_n, ranks_rho, ranks_eps, ranks_sep, c.n_min);
    if (bench->parsed()) return cmd_bench(bench_sizes, c, seed, verify);
    if (ver->parsed()) return cmd_verify(matrix_path, c, n_rand, seed);
  } catch (const Error& e) {
    emit_error(to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error("INTERNAL", e.what());
    return 3;
  }
  return 2;
}

}  // namespace tz::cli
