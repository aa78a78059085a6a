#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "dlab/cli/run.hpp"
#include "dlab/errors.hpp"
#include "dlab/kdv/flow.hpp"
#include "dlab/kdv/gauge.hpp"
#include "dlab/kdv/picard.hpp"
#include "dlab/lattice/arithmetic.hpp"
#include "dlab/lattice/count_table.hpp"
#include "dlab/lattice/divisor.hpp"
#include "dlab/strichartz/envelope.hpp"
#include "dlab/strichartz/level_set.hpp"
#include "dlab/strichartz/restriction.hpp"
#include "dlab/util/csv.hpp"
#include "dlab/util/svg.hpp"
#include "dlab/weyl/kernel.hpp"

namespace dlab::cli {

namespace {

using json = nlohmann::json;

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream(p, std::ios::binary) << j.dump(2) << '\n';
}

int as_int(long long v, const std::string& key, long long lo, long long hi) {
  if (v < lo || v > hi)
    throw ConfigError("parameter '" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "], got " + std::to_string(v));
  return static_cast<int>(v);
}

std::vector<int> int_list(const ExperimentConfig& cfg, const std::string& key, long long lo, long long hi) {
  std::vector<int> out;
  for (long long v : cfg.get_int_list(key)) out.push_back(as_int(v, key, lo, hi));
  return out;
}

double positive(const ExperimentConfig& cfg, const std::string& key) {
  const double v = cfg.get_real(key);
  if (!(v > 0)) throw ConfigError("parameter '" + key + "' must be positive");
  return v;
}

LatticeBudget lattice_budget(const ExperimentConfig& cfg, bool with_work) {
  LatticeBudget b;
  b.memory_bytes = static_cast<std::size_t>(as_int(cfg.get_int("memory_mb"), "memory_mb", 1, 1 << 20)) << 20;
  if (with_work) b.max_work = static_cast<std::uint64_t>(positive(cfg, "max_work"));
  b.threads = cfg.threads();
  return b;
}

json fit_json(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return nullptr;
  const auto f = fit_loglog(x, y);
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}

void plot(RunContext& ctx, const std::string& name, const std::string& title, const std::string& xl,
          const std::string& yl, const std::vector<PlotSeries>& series) {
  for (const auto& s : series)
    if (s.x.size() < 2) return;  // a single point has no slope to show
  write_loglog_svg(ctx.file(name, title + " (log-log)"), title, xl, yl, series);
}

NonlinearitySpec nonlinearity(const ExperimentConfig& cfg) {
  NonlinearitySpec s;
  s.p1 = cfg.get_real_list("p1");
  s.p2 = cfg.get_real_list("p2");
  return s;
}

// "n:re[:im],..." on the 2 pi torus.
FourierSeries parse_phi(const std::string& text) {
  std::map<int, cplx> terms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("parameter 'phi': expected n:re[:im], got '" + item + "'");
    try {
      const int n = std::stoi(parts[0]);
      const double re = std::stod(parts[1]);
      const double im = parts.size() == 3 ? std::stod(parts[2]) : 0.0;
      if (std::abs(n) > 4096) throw ConfigError("parameter 'phi': mode beyond 4096");
      terms[n] += cplx(re, im);
    } catch (const std::logic_error&) {
      throw ConfigError("parameter 'phi': cannot read '" + item + "'");
    }
  }
  if (terms.empty()) throw ConfigError("parameter 'phi' is empty");
  int band = 0;
  for (const auto& [n, c] : terms) band = std::max(band, std::abs(n));
  FourierSeries f(Torus::TwoPi, band);
  for (const auto& [n, c] : terms) f.at(n) = c;
  return f;
}

PicardOptions picard_options(const ExperimentConfig& cfg) {
  PicardOptions o;
  o.delta = positive(cfg, "delta");
  o.s = cfg.get_real("s");
  o.max_iter = as_int(cfg.get_int("max_iter"), "max_iter", 0, 1000);
  o.band_cap = as_int(cfg.get_int("band_cap"), "band_cap", 1, 4096);
  o.term_cap = static_cast<std::size_t>(as_int(cfg.get_int("term_cap"), "term_cap", 1, 1 << 30));
  o.work_cap = positive(cfg, "work_cap");
  o.prune_tol = cfg.get_real("prune_tol");
  if (o.prune_tol < 0) throw ConfigError("parameter 'prune_tol' must be nonnegative");
  o.diag_samples = as_int(cfg.get_int("diag_samples"), "diag_samples", 2, 100000);
  o.sampled_steps = as_int(cfg.get_int("sampled_steps"), "sampled_steps", 2, 1 << 22);
  if (o.sampled_steps % 2) throw ConfigError("parameter 'sampled_steps' must be even");
  return o;
}

void write_iterates(RunContext& ctx, const PicardResult& r) {
  CsvWriter w(ctx.file("iterates.csv", "Picard diagnostics per iterate"),
              {"j", "diff_norm", "ratio", "terms", "discarded_l2", "pruned_bound", "sampled"});
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const auto& st = r.states[i];
    const double ratio = (i >= 2 && r.states[i - 1].diff_norm > 0) ? st.diff_norm / r.states[i - 1].diff_norm : 0.0;
    w.cell(st.j).cell(st.diff_norm).cell(ratio).cell(static_cast<unsigned long long>(st.terms));
    w.cell(st.discarded_l2).cell(st.pruned_bound).cell(std::holds_alternative<SampledTrajectory>(st.trajectory) ? 1 : 0);
    w.end_row();
  }
}

void write_series(const std::filesystem::path& p, const FourierSeries& f) {
  CsvWriter w(p, {"n", "re", "im"});
  for (int n = -f.band(); n <= f.band(); ++n) {
    if (f[n] == cplx{}) continue;
    w.cell(n).cell(f[n].real()).cell(f[n].imag());
    w.end_row();
  }
}

// ---------------------------------------------------------------------------

void cmd_count(const ExperimentConfig& cfg, RunContext& ctx) {
  const int d = as_int(cfg.get_int("d"), "d", 2, 40);
  const int b = as_int(cfg.get_int("b"), "b", 1, 20);
  const auto Ns = int_list(cfg, "N", 1, 1'000'000);
  const bool divisor = cfg.get_flag("divisor");
  if (divisor && d % 2 == 0) throw ConfigError("divisor scan needs an odd d");
  const auto budget = lattice_budget(cfg, true);
  for (int N : Ns) SystemSpec{d, b, N}.validate();

  CsvWriter w(ctx.file("counts.csv", "S(N;b) per N with the N^b lower bound"),
              {"d", "b", "N", "S", "N_pow_b", "lower_bound_holds"});
  std::vector<double> xs, ys;
  for (int N : Ns) {
    const u128 S = ctx.timed("count N=" + std::to_string(N), [&] { return count_S({d, b, N}, budget); });
    const double nb = std::pow(static_cast<double>(N), b);
    w.cell(d).cell(b).cell(N).cell(to_decimal(S)).cell(nb).cell(static_cast<double>(S) >= nb ? 1 : 0);
    w.end_row();
    xs.push_back(N);
    ys.push_back(static_cast<double>(S));
    if (cfg.get_flag("table")) {
      const auto table = power_sum_distribution({d, b, N}, budget);
      write_csv(table, ctx.file("table_N" + std::to_string(N) + ".csv", "signature table A,B,count"));
    }
  }
  json summary = {{"d", d}, {"b", b}, {"fit", fit_json(xs, ys)},
                  {"reference_exponent", std::max<double>(b, 2.0 * b - (d + 1))}};
  if (divisor) {
    CsvWriter dv(ctx.file("divisor.csv", "three-variable divisor property scan"),
                 {"d", "N", "solutions", "violations", "max_count", "argmax_A", "argmax_B"});
    std::vector<double> dx, dy;
    for (int N : Ns) {
      const auto r = ctx.timed("divisor N=" + std::to_string(N), [&] { return divisor_scan(d, N, budget); });
      dv.cell(d).cell(N).cell(static_cast<unsigned long long>(r.solutions));
      dv.cell(static_cast<unsigned long long>(r.violations)).cell(static_cast<unsigned long long>(r.max_count));
      dv.cell(static_cast<long long>(r.argmax_A)).cell(static_cast<long long>(r.argmax_B));
      dv.end_row();
      dx.push_back(N);
      dy.push_back(static_cast<double>(r.max_count));
    }
    summary["divisor_max_count_fit"] = fit_json(dx, dy);
  }
  write_json(ctx.file("summary.json", "fitted exponents"), summary);
  plot(ctx, "counts.svg", "S(N;b), d=" + std::to_string(d) + ", b=" + std::to_string(b), "N", "S",
       {{"S(N;b)", xs, ys}});
}

void cmd_strichartz(const ExperimentConfig& cfg, RunContext& ctx) {
  const int d = as_int(cfg.get_int("d"), "d", 2, 40);
  const long long p = cfg.get_int("p");
  if (p < 2 || p % 2) throw ConfigError("parameter 'p' must be an even integer >= 2 for even-norm scans, got " + std::to_string(p));
  const auto Ns = int_list(cfg, "N", 1, 1'000'000);
  EnvelopeOptions opt;
  opt.strategies.clear();
  std::stringstream ss(cfg.get_text("strategies"));
  for (std::string s; std::getline(ss, s, ',');) {
    bool ok = false;
    for (auto e : {EnvelopeStrategy::AllOnes, EnvelopeStrategy::Single, EnvelopeStrategy::Random, EnvelopeStrategy::Ascent})
      if (to_string(e) == s) opt.strategies.push_back(e), ok = true;
    if (!ok) throw ConfigError("parameter 'strategies': unknown strategy '" + s + "'");
  }
  if (opt.strategies.empty()) throw ConfigError("parameter 'strategies' is empty");
  opt.random_draws = as_int(cfg.get_int("random_draws"), "random_draws", 0, 1 << 20);
  opt.restarts = as_int(cfg.get_int("restarts"), "restarts", 0, 1 << 20);
  opt.iterations = as_int(cfg.get_int("iterations"), "iterations", 0, 1 << 20);
  opt.step = positive(cfg, "step");
  opt.seed = cfg.seed();
  opt.search_work_limit = cfg.get_real("search_limit");
  opt.budget = lattice_budget(cfg, false);
  const double eps = cfg.get_real("eps");
  const int b = static_cast<int>(p / 2);
  for (int N : Ns) SystemSpec{d, b, N}.validate();

  CsvWriter w(ctx.file("strategies.csv", "lower bounds per strategy"), {"d", "p", "N", "strategy", "value", "note"});
  CsvWriter e(ctx.file("envelope.csv", "best lower bound and theoretical upper bound"),
              {"d", "p", "N", "envelope", "best", "theory_upper", "prop_reference"});
  std::vector<double> xs, env, theory;
  for (int N : Ns) {
    const auto rep = ctx.timed("envelope N=" + std::to_string(N),
                               [&] { return k_lower_envelope(static_cast<int>(p), N, d, opt, eps); });
    for (const auto& s : rep.strategies) {
      w.cell(d).cell(static_cast<long long>(p)).cell(N).cell(to_string(s.strategy));
      if (s.value)
        w.cell(*s.value);
      else
        w.cell("");
      w.cell(s.note.empty() ? "-" : s.note);
      w.end_row();
    }
    const double ref = 1.0 + std::pow(static_cast<double>(N), 0.5 - (d + 1.0) / static_cast<double>(p));
    e.cell(d).cell(static_cast<long long>(p)).cell(N).cell(rep.envelope).cell(to_string(rep.best));
    e.cell(rep.theory_upper).cell(ref);
    e.end_row();
    xs.push_back(N);
    env.push_back(rep.envelope);
    theory.push_back(rep.theory_upper);
  }
  write_json(ctx.file("summary.json", "envelope growth fit"),
             {{"d", d}, {"p", p}, {"envelope_fit", fit_json(xs, env)}, {"theory_fit", fit_json(xs, theory)}});
  plot(ctx, "envelope.svg", "K lower envelope, d=" + std::to_string(d) + ", p=" + std::to_string(p), "N", "K",
       {{"lower envelope", xs, env}, {"theoretical upper", xs, theory}});
}

void cmd_levelset(const ExperimentConfig& cfg, RunContext& ctx) {
  const std::string mode = cfg.get_text("mode");
  if (mode != "curve" && mode != "kernel") throw ConfigError("parameter 'mode' must be curve or kernel");
  const int d = as_int(cfg.get_int("d"), "d", 2, 12);
  const int N = as_int(cfg.get_int("N"), "N", 1, 1 << 20);
  LevelSetScanConfig sc;
  sc.c = positive(cfg, "c");
  sc.eps = cfg.get_real("eps");
  sc.lambdas = as_int(cfg.get_int("lambdas"), "lambdas", 1, 10000);
  sc.min_hits = static_cast<std::uint64_t>(as_int(cfg.get_int("min_hits"), "min_hits", 1, 1 << 30));
  sc.sampler.samples = static_cast<std::uint64_t>(as_int(cfg.get_int("samples"), "samples", 1, 2'000'000'000));
  sc.sampler.seed = cfg.seed();
  sc.sampler.threads = cfg.threads();
  sc.sampler.z = positive(cfg, "z");

  LevelSetReport rep;
  if (mode == "curve") {
    const std::string coeffs = cfg.get_text("coefficients");
    std::mt19937_64 rng(cfg.seed());
    if (coeffs != "ones" && coeffs != "random") throw ConfigError("parameter 'coefficients' must be ones or random");
    const auto a = coeffs == "ones" ? CoefficientVector::ones(N) : CoefficientVector::random(N, rng);
    rep = ctx.timed("curve level sets", [&] { return verify_cor1(a, d, sc); });
  } else {
    rep = ctx.timed("kernel level sets", [&] { return verify_kernel_levelset(d, N, sc); });
  }
  CsvWriter w(ctx.file("levelset.csv", "level-set measures with Wilson intervals and bound ratios"),
              {"lambda", "measure", "ci_halfwidth", "samples", "hits", "ratio", "resolved"});
  LevelSetProfile prof;
  std::vector<double> xs, ys;
  for (const auto& r : rep.rows) {
    w.cell(r.entry.lambda).cell(r.entry.estimate).cell(r.entry.ci_halfwidth);
    w.cell(static_cast<unsigned long long>(r.entry.samples)).cell(static_cast<unsigned long long>(r.entry.hits));
    w.cell(r.ratio).cell(r.resolved ? 1 : 0);
    w.end_row();
    prof.push_back(r.entry);
    if (r.entry.hits > 0) {
      xs.push_back(r.entry.lambda);
      ys.push_back(r.entry.estimate);
    }
  }
  json summary = {{"mode", mode},
                  {"d", d},
                  {"N", N},
                  {"lambda_min", rep.lambda_min},
                  {"lambda_max", rep.lambda_max},
                  {"n_exponent", rep.n_exponent},
                  {"lambda_exponent", rep.lambda_exponent},
                  {"monotone_up_to_ci", monotone_up_to_ci(prof)},
                  {"max_ratio", rep.max_ratio},
                  {"stability", rep.stability ? json(*rep.stability) : json(nullptr)},
                  {"regime", rep.regime ? json(*rep.regime) : json(nullptr)}};
  if (rep.regime) ctx.note(*rep.regime);
  write_json(ctx.file("summary.json", "ratio stability and regime"), summary);
  if (xs.size() >= 2)
    plot(ctx, "levelset.svg", "level-set measure, d=" + std::to_string(d) + ", N=" + std::to_string(N), "lambda",
         "measure", {{"measure", xs, ys}});
}

void cmd_weyl(const ExperimentConfig& cfg, RunContext& ctx) {
  const int d = as_int(cfg.get_int("d"), "d", 2, 12);
  std::vector<std::int64_t> Ns;
  for (int n : int_list(cfg, "N", 2, 1 << 20)) Ns.push_back(n);
  const double eps = cfg.get_real("eps");
  const int primes = as_int(cfg.get_int("primes"), "primes", 1, 1000);
  const int arcs_Q = as_int(cfg.get_int("arcs_Q"), "arcs_Q", 2, 2000);
  const auto lemma_Q = cfg.get_int_list("lemma2_Q");
  const auto lemma_n = cfg.get_int_list("lemma2_n");
  for (auto q : lemma_Q)
    if (q < 1) throw ConfigError("parameter 'lemma2_Q' must hold positive values");

  const auto rows = ctx.timed("minor arcs", [&] { return minor_arc_scan(Ns, d, eps, primes, cfg.seed()); });
  write_scan_csv(rows, ctx.file("minor_arcs.csv", "|weyl_sum| at minor-arc points against the bound"));
  const auto arcs = major_arcs(arcs_Q);
  write_arcs_csv(arcs, ctx.file("arcs.csv", "major arcs with exact endpoints"));

  CsvWriter lw(ctx.file("lemma2.csv", "Ramanujan-sum mass ratio"), {"Q", "n", "mass", "divisors", "ratio"});
  std::vector<double> ratios;
  ctx.timed("ramanujan mass", [&] {
    for (auto n : lemma_n)
      for (auto Q : lemma_Q) {
        const auto r = verify_lemma2(Q, n, eps);
        lw.cell(static_cast<long long>(Q)).cell(static_cast<long long>(n)).cell(r.ramanujan_mass);
        lw.cell(static_cast<long long>(r.divisors)).cell(r.ratio);
        lw.end_row();
        ratios.push_back(r.ratio);
      }
    return 0;
  });
  double max_ratio = 0.0;
  for (const auto& r : rows) max_ratio = std::max(max_ratio, r.ratio);
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  write_json(ctx.file("summary.json", "scan maxima"),
             {{"d", d},
              {"minor_arc_max_ratio", max_ratio},
              {"arcs", arcs.size()},
              {"arcs_disjoint", arcs_disjoint(arcs)},
              {"lemma2_ratio_spread", ratios.empty() || *lo <= 0 ? json(nullptr) : json(*hi / *lo)}});
  std::vector<double> xs, ys, bs;
  for (const auto& r : rows) {
    xs.push_back(static_cast<double>(r.Q));
    ys.push_back(r.quantity);
    bs.push_back(r.bound);
  }
  plot(ctx, "minor_arcs.svg", "Weyl sums on minor arcs, d=" + std::to_string(d), "q", "|S|",
       {{"|weyl_sum|", xs, ys}, {"bound", xs, bs}});
}

void cmd_kernel(const ExperimentConfig& cfg, RunContext& ctx) {
  const int d = as_int(cfg.get_int("d"), "d", 2, 6);
  std::vector<std::int64_t> Ns;
  for (int n : int_list(cfg, "N", 2, 4096)) Ns.push_back(n);
  const int k_dense = as_int(cfg.get_int("k_dense"), "k_dense", 0, 1 << 22);
  const int structured = as_int(cfg.get_int("structured"), "structured", 0, 1 << 16);
  const int random = as_int(cfg.get_int("random"), "random", 0, 1 << 22);
  const int samples = as_int(cfg.get_int("samples"), "samples", 1, 1 << 26);

  CsvWriter kw(ctx.file("k2_curve.csv", "K2 coefficients on the curve (n, n^d)"), {"N", "Q", "max_abs_K2_hat", "zero"});
  ctx.timed("K2 on the curve", [&] {
    for (auto N : Ns) {
      const double Q = std::pow(static_cast<double>(N), d - 1);
      const auto dec = decompose_kernel(N, d, Q);
      double m = 0.0;
      for (std::int64_t n = -N; n <= N; ++n) m = std::max(m, std::abs(dec.K2_hat(n, ipow(n, d))));
      kw.cell(static_cast<long long>(N)).cell(static_cast<long long>(dec.Q)).cell(m).cell(m == 0.0 ? 1 : 0);
      kw.end_row();
    }
    return 0;
  });
  const auto phi = ctx.timed("Phi-hat scan", [&] { return phi_hat_scan(Ns, d, k_dense, structured, random, cfg.seed()); });
  write_scan_csv(phi, ctx.file("phi_hat.csv", "max |Phi_hat(k)| Q over the scan set"));
  const auto k1 = ctx.timed("K1 sup", [&] { return k1_sup_scan(Ns, d, samples, cfg.seed()); });
  write_scan_csv(k1, ctx.file("k1_sup.csv", "sampled sup |K_1| against N^(1-d 2^(1-d)) Q^(2^(1-d))"));
  std::vector<double> xs, py, ky;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    xs.push_back(static_cast<double>(Ns[i]));
    py.push_back(phi[i].quantity);
    ky.push_back(k1[i].ratio);
  }
  const auto [lo, hi] = std::minmax_element(ky.begin(), ky.end());
  write_json(ctx.file("summary.json", "growth fits"),
             {{"d", d}, {"phi_hat_fit", fit_json(xs, py)}, {"k1_ratio_spread", *lo > 0 ? json(*hi / *lo) : json(nullptr)}});
  plot(ctx, "phi_hat.svg", "max |Phi_hat(k)| Q, Q = N^" + std::to_string(d - 1), "N", "max |Phi_hat| Q",
       {{"max |Phi_hat| Q", xs, py}});
}

void cmd_illposed(const ExperimentConfig& cfg, RunContext& ctx) {
  const auto spec = nonlinearity(cfg);
  if (spec.is_zero()) throw ConfigError("parameters 'p1' and 'p2' are both zero");
  const double s = cfg.get_real("s");
  const double eps = positive(cfg, "eps");
  const double t = positive(cfg, "t");
  const auto Ns = int_list(cfg, "N", 1, 1 << 20);
  if (Ns.size() < 2) throw ConfigError("parameter 'N' needs at least two frequencies for a slope");
  const auto fit = ctx.timed("scan", [&] {
    return illposedness_scan(spec, s, eps, t, Ns, cfg.get_real("min_dominance"));
  });
  CsvWriter w(ctx.file("illposed.csv", "H^s norm of the first iterate per N"), {"N", "norm", "dominance"});
  std::vector<double> xs, ys;
  for (const auto& r : fit.rows) {
    w.cell(r.N).cell(r.norm).cell(r.dominance);
    w.end_row();
    xs.push_back(r.N);
    ys.push_back(r.norm);
  }
  if (fit.warning) ctx.note(*fit.warning);
  write_json(ctx.file("slope.json", "fitted growth exponent"),
             {{"s", s}, {"t", t}, {"eps", eps}, {"slope", fit.slope},
              {"warning", fit.warning ? json(*fit.warning) : json(nullptr)}});
  plot(ctx, "illposed.svg", "first iterate growth, s=" + format_double(s), "N", "||u1(t)||_{H^s}",
       {{"||u1||", xs, ys}});
}

void cmd_solve(const ExperimentConfig& cfg, RunContext& ctx) {
  const auto phi = parse_phi(cfg.get_text("phi"));
  auto spec = nonlinearity(cfg);
  spec.mean_removed = cfg.get_flag("mean_removed");
  const auto opt = picard_options(cfg);
  const auto r = ctx.timed("picard", [&] { return picard_solve(phi, spec, opt); });
  write_iterates(ctx, r);
  write_series(ctx.file("solution.csv", "coefficients of the last iterate at t = delta"),
               slice(r.states.back().trajectory, opt.delta));
  CsvWriter tw(ctx.file("trajectory.csv", "last iterate on the diagnostic time grid"), {"t", "n", "re", "im"});
  for (double t : time_grid(opt.delta, opt.diag_samples)) {
    const auto f = slice(r.states.back().trajectory, t);
    for (int n = -f.band(); n <= f.band(); ++n) {
      if (f[n] == cplx{}) continue;
      tw.cell(t).cell(n).cell(f[n].real()).cell(f[n].imag());
      tw.end_row();
    }
  }
  std::vector<std::string> lines;
  std::stringstream rs(r.report);
  for (std::string l; std::getline(rs, l);) lines.push_back(l);
  write_json(ctx.file("summary.json", "contraction verdict and report"),
             {{"contraction", r.contraction},
              {"sampled", r.sampled},
              {"sampled_step", r.sampled_step},
              {"data_real", conjugate_symmetric(HarmonicTrajectory::from_series(phi), 0.0)},
              {"ratios", contraction_ratios(r)},
              {"report", lines}});
  if (r.sampled) ctx.note("exact iteration switched to time samples; see summary.json");
}

void cmd_gauge(const ExperimentConfig& cfg, RunContext& ctx) {
  const auto phi = parse_phi(cfg.get_text("phi"));
  const int k = as_int(cfg.get_int("k"), "k", 1, 12);
  const auto opt = picard_options(cfg);
  const auto v = ctx.timed("picard", [&] { return picard_solve(phi, NonlinearitySpec::monomial_p1(k, true), opt); });
  write_iterates(ctx, v);
  const auto u = gauge_transform(v.states.back().trajectory, k);
  const auto full = NonlinearitySpec::monomial_p1(k);
  CsvWriter w(ctx.file("gauge.csv", "gauge angle and full-equation residual per time"),
              {"t", "theta", "theta_rate", "residual"});
  double worst = 0.0;
  ctx.timed("residual", [&] {
    for (double t : time_grid(opt.delta, opt.diag_samples)) {
      const double res = residual(u, full, {t});
      worst = std::max(worst, res);
      w.cell(t).cell(u.theta(t)).cell(u.theta_rate(t)).cell(res);
      w.end_row();
    }
    return 0;
  });
  json summary = {{"k", k}, {"residual", worst}, {"contraction", v.contraction}, {"sampled", v.sampled}};
  if (const auto* h = std::get_if<HarmonicTrajectory>(&v.states.back().trajectory)) {
    const auto times = time_grid(opt.delta, opt.diag_samples);
    summary["mean_removed_residual"] = residual(*h, NonlinearitySpec::monomial_p1(k, true), times);
    summary["ungauged_full_residual"] = residual(*h, full, times);
  }
  write_json(ctx.file("summary.json", "sup-in-time residuals"), summary);
}

void cmd_embeddings(const ExperimentConfig& cfg, RunContext& ctx) {
  EmbeddingConfig ec;
  ec.Ns = int_list(cfg, "N", 1, 4096);
  ec.trials = as_int(cfg.get_int("trials"), "trials", 1, 10000);
  ec.delta = positive(cfg, "delta");
  ec.samples = static_cast<std::uint64_t>(as_int(cfg.get_int("samples"), "samples", 1, 2'000'000'000));
  ec.seed = cfg.seed();
  ec.threads = cfg.threads();
  const auto rep = ctx.timed("embeddings", [&] { return verify_embeddings(ec); });
  CsvWriter w(ctx.file("embeddings.csv", "windowed L4 norm against the X_{0,0.3} norm"),
              {"N", "trial", "l4", "l4_error", "xsb", "ratio"});
  std::map<int, double> worst;
  for (const auto& r : rep.rows) {
    w.cell(r.N).cell(r.trial).cell(r.l4).cell(r.l4_error).cell(r.xsb).cell(r.ratio);
    w.end_row();
    worst[r.N] = std::max(worst[r.N], r.ratio);
  }
  std::vector<double> xs, ys;
  for (const auto& [N, r] : worst) xs.push_back(N), ys.push_back(r);
  write_json(ctx.file("summary.json", "ratio range"),
             {{"max_ratio", rep.max_ratio}, {"min_ratio", rep.min_ratio}, {"fit", fit_json(xs, ys)}});
  plot(ctx, "embeddings.svg", "L4 / X_{0,0.3}", "N", "ratio", {{"max ratio", xs, ys}});
}

}  // namespace

void run_command(const ExperimentConfig& cfg, RunContext& ctx) {
  const std::string& c = cfg.command();
  if (c == "count") return cmd_count(cfg, ctx);
  if (c == "strichartz") return cmd_strichartz(cfg, ctx);
  if (c == "levelset") return cmd_levelset(cfg, ctx);
  if (c == "weyl") return cmd_weyl(cfg, ctx);
  if (c == "kernel") return cmd_kernel(cfg, ctx);
  if (c == "illposed") return cmd_illposed(cfg, ctx);
  if (c == "solve") return cmd_solve(cfg, ctx);
  if (c == "gauge-check") return cmd_gauge(cfg, ctx);
  if (c == "embeddings") return cmd_embeddings(cfg, ctx);
  throw ConfigError("unknown command '" + c + "'");
}

}  // namespace dlab::cli
