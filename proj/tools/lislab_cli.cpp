// lislab command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lislab/edgelaws.hpp"
#include "lislab/enumerate.hpp"
#include "lislab/errors.hpp"
#include "lislab/io.hpp"
#include "lislab/simulate.hpp"
#include "lislab/stats.hpp"
#include "lislab/verify.hpp"
#include "lislab/version.hpp"

using namespace lislab;
using json = nlohmann::json;

namespace {

constexpr int kExitUsage = 2, kExitNumerical = 3, kExitInvariant = 4, kExitIo = 1;

struct Grid {
  double lo = 0, hi = 0;
  int n = 0;
  std::vector<double> points() const {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return p;
  }
};

Grid parse_grid(const std::string& s) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || !is.eof() || g.n < 1 || !(g.lo <= g.hi))
    throw ArgumentError("--grid expects lo:hi:n with lo <= hi and n >= 1, got '" + s + "'");
  return g;
}

std::pair<double, double> parse_range(const std::string& s) {
  double lo, hi;
  char c = 0;
  std::istringstream is(s);
  if (!(is >> lo >> c >> hi) || c != ':' || !is.eof() || !(lo < hi))
    throw ArgumentError("expected lo:hi with lo < hi, got '" + s + "'");
  return {lo, hi};
}

struct Shared {
  std::string out;
  std::string grid;
  std::string route = "fredholm";
  std::string precision;
  std::string config;
  bool no_cache = false;
  int threads = 1;
};

void add_shared(CLI::App* sub, Shared& s, bool with_grid, bool with_route) {
  sub->add_option("--out", s.out, "Output file (default: stdout)");
  if (with_grid) sub->add_option("--grid", s.grid, "Grid lo:hi:n");
  if (with_route) sub->add_option("--route", s.route, "fredholm | painleve | bj")->capture_default_str();
  sub->add_option("--precision", s.precision, "Arithmetic (enumerate: modular | rational; others: double)");
  sub->add_option("--config", s.config, "JSON file with option values");
  sub->add_flag("--no-cache", s.no_cache, "Bypass the results cache");
  sub->add_option("--threads", s.threads, "Worker cap")->check(CLI::PositiveNumber)->capture_default_str();
}

void require_double_precision(const Shared& s) {
  if (!s.precision.empty() && s.precision != "double")
    throw ArgumentError("--precision: only 'double' is available for this command");
}

// Writes the output (stdout when --out is empty) and, for files, a manifest.
void emit(const CLI::App* sub, const Shared& s, const std::string& content, double seconds,
          const json& seeds = json::array()) {
  if (s.out.empty()) {
    std::cout << content;
    return;
  }
  io::atomic_write(s.out, content);
  json params = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    if (o->get_name() == "--help" || o->get_name().empty()) continue;
    std::string key = o->get_name();
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    const auto& r = o->results();
    if (r.empty())
      params[key] = o->get_default_str().empty() ? json(nullptr) : json(o->get_default_str());
    else if (r.size() == 1)
      params[key] = r[0];
    else
      params[key] = r;
  }
  json m = {{"command", sub->get_name()},
            {"parameters", params},
            {"seeds", seeds},
            {"library_version", kVersion},
            {"wall_time_seconds", seconds},
            {"outputs", json::array({{{"path", s.out}, {"sha256", io::sha256_file(s.out)}}})}};
  io::atomic_write(s.out + ".manifest.json", m.dump(2) + "\n");
}

// Inserts option values from a JSON config after the subcommand name so that
// explicit flags (later on the line) take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  json cfg;
  try {
    cfg = json::parse(io::read_file(path));
  } catch (const json::exception& e) {
    throw ArgumentError("--config: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw ArgumentError("--config: top level must be an object");
  const std::string sub = args[1];
  json flat = json::object();
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (!it.value().is_object()) flat[it.key()] = it.value();
  if (cfg.contains(sub) && cfg[sub].is_object())
    for (auto it = cfg[sub].begin(); it != cfg[sub].end(); ++it) flat[it.key()] = it.value();
  std::vector<std::string> extra;
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    const std::string flag = "--" + it.key();
    const json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
    } else if (v.is_string()) {
      extra.push_back(flag);
      extra.push_back(v.get<std::string>());
    } else if (v.is_number()) {
      extra.push_back(flag);
      extra.push_back(v.dump());
    } else {
      throw ArgumentError("--config: unsupported value for '" + it.key() + "'");
    }
  }
  args.insert(args.begin() + 2, extra.begin(), extra.end());
  return args;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExactBackend backend_of(const Shared& s) {
  if (s.precision.empty() || s.precision == "modular") return ExactBackend::Modular;
  if (s.precision == "rational") return ExactBackend::Rational;
  throw ArgumentError("--precision: enumerate accepts modular or rational");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lislab: LIS limit laws, finite-size corrections and exact/Monte Carlo distributions"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", kVersion);
  const auto t0 = std::chrono::steady_clock::now();
  Shared sh;

  // gap
  int beta = 2;
  std::string edge = "soft";
  double order = 0;
  auto* gap = app.add_subcommand("gap", "Soft- or hard-edge gap probability curve");
  gap->add_option("--beta", beta)->check(CLI::IsMember({1, 2, 4}))->capture_default_str();
  gap->add_option("--edge", edge)->check(CLI::IsMember({"soft", "hard"}))->capture_default_str();
  gap->add_option("--a", order, "Hard-edge order")->capture_default_str();
  add_shared(gap, sh, true, true);

  // correction
  auto* corr = app.add_subcommand("correction", "Leading correction F_{beta,1} curve");
  corr->add_option("--beta", beta)->check(CLI::IsMember({1, 2, 4}))->capture_default_str();
  add_shared(corr, sh, true, true);

  // delta-hard
  int l = 20;
  auto* dh = app.add_subcommand("delta-hard", "Finite-l scaled hard-to-soft difference and its residual");
  dh->add_option("--beta", beta)->check(CLI::IsMember({1, 2, 4}))->capture_default_str();
  dh->add_option("--l", l)->capture_default_str();
  add_shared(dh, sh, true, true);

  // enumerate
  std::string cls_name = "plain";
  int nmax = 20;
  int l_opt = -1;
  auto* en = app.add_subcommand("enumerate", "Exact CDF tables");
  en->add_option("--class", cls_name, "plain | inc | dec")->capture_default_str();
  en->add_option("--nmax", nmax)->check(CLI::PositiveNumber)->capture_default_str();
  en->add_option("--l", l_opt, "Threshold: counts for N = 0..nmax (omit for the full table at nmax)");
  add_shared(en, sh, false, false);

  // simulate
  int n = 100;
  long trials = 10000;
  std::uint64_t seed = 0;
  bool hammersley = false;
  double z = 1.0;
  auto* si = app.add_subcommand("simulate", "Monte Carlo empirical CDF");
  si->add_option("--class", cls_name)->capture_default_str();
  si->add_option("--n", n)->capture_default_str();
  si->add_option("--trials", trials)->capture_default_str();
  si->add_option("--seed", seed)->capture_default_str();
  si->add_flag("--hammersley", hammersley, "Poissonized model with intensity z^2");
  si->add_option("--z", z)->capture_default_str();
  add_shared(si, sh, false, false);

  // delta-n
  std::string source = "exact", trange = "-8:6";
  auto* dn = app.add_subcommand("delta-n", "Scaled difference between a finite-N CDF and its limit law");
  dn->add_option("--class", cls_name)->capture_default_str();
  dn->add_option("--n", n)->capture_default_str();
  dn->add_option("--source", source)->check(CLI::IsMember({"exact", "empirical"}))->capture_default_str();
  dn->add_option("--trials", trials)->capture_default_str();
  dn->add_option("--seed", seed)->capture_default_str();
  dn->add_option("--t-range", trange, "lo:hi")->capture_default_str();
  add_shared(dn, sh, false, false);

  // moments
  int smoothed_n = 0;
  std::vector<int> betas;
  auto* mo = app.add_subcommand("moments", "Limit-law moments, or smoothed-limit offsets with --smoothed");
  mo->add_option("--beta", betas)->check(CLI::IsMember({1, 2, 4}));
  mo->add_option("--smoothed", smoothed_n, "N for the smoothed-limit mean/variance");
  add_shared(mo, sh, false, false);

  // fit
  int nmin = 10;
  auto* fi = app.add_subcommand("fit", "Hat quantities from exact tables and their c + d N^{-1/3} fits");
  fi->add_option("--class", cls_name)->capture_default_str();
  fi->add_option("--nmin", nmin)->capture_default_str();
  fi->add_option("--nmax", nmax)->capture_default_str();
  add_shared(fi, sh, false, false);

  // verify
  auto* ve = app.add_subcommand("verify", "Cross-route and oracle invariant suite");
  add_shared(ve, sh, false, false);

  try {
    const auto args = expand_config(argc, argv);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargs.size()), const_cast<char**>(cargs.data()));
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : kExitUsage;
    }
    std::ostringstream os;
    os << std::setprecision(17);
    const Route route = parse_route(sh.route);

    if (gap->parsed()) {
      require_double_precision(sh);
      const Grid g = parse_grid(sh.grid.empty() ? (edge == "soft" ? "-6:4:200" : "0:40:100") : sh.grid);
      const auto pts = g.points();
      std::vector<double> v(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        v[i] = edge == "soft" ? gap_soft(beta, pts[i], route) : gap_hard(beta, pts[i], order, route);
      os << (edge == "soft" ? "t" : "s") << ",value,edge,beta,route" << (edge == "hard" ? ",a" : "") << '\n';
      for (std::size_t i = 0; i < pts.size(); ++i) {
        os << pts[i] << ',' << v[i] << ',' << edge << ',' << beta << ',' << to_string(route);
        if (edge == "hard") os << ',' << order;
        os << '\n';
      }
      emit(gap, sh, os.str(), seconds_since(t0));
    } else if (corr->parsed()) {
      require_double_precision(sh);
      const Grid g = parse_grid(sh.grid.empty() ? "-6:3:100" : sh.grid);
      correction_curve(beta, g.points(), route, sh.threads).write_csv(os);
      emit(corr, sh, os.str(), seconds_since(t0));
    } else if (dh->parsed()) {
      require_double_precision(sh);
      const Grid g = parse_grid(sh.grid.empty() ? "-6:3:100" : sh.grid);
      const Route gap_route = route == Route::BaikJenkins ? Route::Painleve : route;
      const auto d = delta_hard_curve(beta, l, g.points(), gap_route, sh.threads);
      const auto f = correction_curve(beta, g.points(), route, sh.threads);
      os << "t,delta_hard,correction,residual,route,beta,l\n";
      const double s = std::pow(l, -2.0 / 3.0);
      for (std::size_t i = 0; i < d.t.size(); ++i)
        os << d.t[i] << ',' << d.value[i] << ',' << f.value[i] << ',' << s * (d.value[i] - f.value[i]) << ','
           << to_string(route) << ',' << beta << ',' << l << '\n';
      emit(dh, sh, os.str(), seconds_since(t0));
    } else if (en->parsed()) {
      const PermClass cls = parse_perm_class(cls_name);
      const ExactBackend be = backend_of(sh);
      if (l_opt >= 0) {
        const io::Cache cache(io::cache_dir(), !sh.no_cache);
        const std::string record = "lislab exact-counts v1 class=" + to_string(cls) + " nmax=" + std::to_string(nmax) +
                                   " l=" + std::to_string(l_opt);
        std::string text;
        if (auto hit = cache.load(record, ".csv"); hit && be == ExactBackend::Modular) {
          text = *hit;
        } else {
          const auto c = cls == PermClass::Plain ? enumerate_plain(nmax, l_opt, be)
                                                 : enumerate_involution(nmax, l_opt, cls, be);
          std::ostringstream t;
          t << "N,l,count,total,probability\n" << std::setprecision(17);
          for (int N = 0; N <= nmax; ++N) {
            const mpz_class tot = class_total(cls, N);
            t << N << ',' << l_opt << ',' << c[N].get_str() << ',' << tot.get_str() << ','
              << (tot == 0 ? 0.0 : mpq_class(c[N], tot).get_d()) << '\n';
          }
          text = t.str();
          cache.store(record, ".csv", text);
        }
        emit(en, sh, text, seconds_since(t0));
      } else {
        const ExactCdfTable t = be == ExactBackend::Modular ? cached_tables(cls, {nmax}, !sh.no_cache, sh.threads).at(nmax)
                                                           : build_table(cls, nmax, be, sh.threads);
        t.write(os);
        emit(en, sh, os.str(), seconds_since(t0));
      }
    } else if (si->parsed()) {
      SimConfig cfg;
      cfg.kind = hammersley ? SimKind::Hammersley : sim_kind_of(parse_perm_class(cls_name));
      cfg.N = n;
      cfg.z = z;
      cfg.trials = trials;
      cfg.master_seed = seed;
      run(cfg, sh.threads).write_csv(os);
      emit(si, sh, os.str(), seconds_since(t0), json::array({seed}));
    } else if (dn->parsed()) {
      const PermClass cls = parse_perm_class(cls_name);
      const auto [tlo, thi] = parse_range(trange);
      DeltaCurve d;
      json seeds = json::array();
      if (source == "exact") {
        d = delta_curve(cached_tables(cls, {n}, !sh.no_cache, sh.threads).at(n), tlo, thi, sh.threads);
      } else {
        SimConfig cfg;
        cfg.kind = sim_kind_of(cls);
        cfg.N = n;
        cfg.trials = trials;
        cfg.master_seed = seed;
        d = delta_curve(run(cfg, sh.threads), tlo, thi, sh.threads);
        seeds.push_back(seed);
      }
      d.write_csv(os);
      emit(dn, sh, os.str(), seconds_since(t0), seeds);
    } else if (mo->parsed()) {
      require_double_precision(sh);
      if (smoothed_n > 0) {
        const auto [e, v] = smoothed_limit_moments(smoothed_n);
        const auto h = hat_quantities(smoothed_n, e, v, limit_moments(2));
        os << "N,E_inf,Var_inf,mean_offset,variance_offset\n"
           << smoothed_n << ',' << e << ',' << v << ',' << h.mu_hat << ',' << h.sigma2_hat << '\n';
      } else {
        if (betas.empty()) betas = {1, 2, 4};
        os << "beta,m1,m2,variance\n";
        for (int b : betas) {
          const auto m = limit_moments(b);
          os << b << ',' << m.m1 << ',' << m.m2 << ',' << m.variance() << '\n';
        }
      }
      emit(mo, sh, os.str(), seconds_since(t0));
    } else if (fi->parsed()) {
      const PermClass cls = parse_perm_class(cls_name);
      if (nmin < 1 || nmin >= nmax) throw ArgumentError("fit: need 1 <= nmin < nmax");
      std::vector<int> Ns;
      for (int N = nmin; N <= nmax; ++N)
        if (cls == PermClass::Plain || N % 2 == 0) Ns.push_back(N);
      const auto tables = cached_tables(cls, Ns, !sh.no_cache, sh.threads);
      const MomentSet lim = limit_moments(soft_beta(cls));
      std::vector<HatRow> rows;
      std::vector<std::pair<double, double>> mu, sg;
      for (int N : Ns) {
        const auto em = exact_mean_var(tables.at(N));
        const auto h = hat_quantities(N, em.mean.get_d(), em.variance.get_d(), lim);
        rows.push_back({N, h});
        mu.emplace_back(N, h.mu_hat);
        sg.emplace_back(N, h.sigma2_hat);
      }
      write_hat_csv(os, rows, fit_inverse_cuberoot(mu), fit_inverse_cuberoot(sg));
      emit(fi, sh, os.str(), seconds_since(t0));
    } else if (ve->parsed()) {
      int failed = 0;
      const auto results = run_verify_suite(sh.threads, [&](const CheckResult& r) {
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name << " (" << r.detail << ")\n";
      });
      os << "module,check,passed,detail\n";
      for (const auto& r : results) {
        failed += !r.passed;
        os << r.module << ",\"" << r.name << "\"," << (r.passed ? "true" : "false") << ",\"" << r.detail << "\"\n";
      }
      emit(ve, sh, os.str(), seconds_since(t0));
      return failed ? kExitInvariant : 0;
    }
    return 0;
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
