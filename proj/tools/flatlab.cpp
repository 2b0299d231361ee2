#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatlab/acceptance.hpp"
#include "flatlab/error.hpp"
#include "flatlab/kernels.hpp"
#include "flatlab/mahler.hpp"
#include "flatlab/mz.hpp"
#include "flatlab/nodes.hpp"
#include "flatlab/norms.hpp"
#include "flatlab/parallel.hpp"
#include "flatlab/random.hpp"
#include "flatlab/riesz.hpp"
#include "flatlab/sidon.hpp"
#include "flatlab/singer.hpp"
#include "report.hpp"

namespace {

using namespace flatlab;
using cli::Report;
using cli::Scalar;
using cli::Table;

constexpr const char* kGrammar =
    "usage: flatlab <command> [--p P | --primes LIST] [--alpha A] [--delta D] [--epsilon E]\n"
    "               [--kappa K] [--grid N] [--levels K] [--preset NAME]\n"
    "               [--format json|csv|text] [--seed S] [--threads N] [--out PATH]\n"
    "commands: singer, sidon, flatness, mahler, mz, riesz, verify-all\n";

struct Options {
  std::optional<std::int64_t> p;
  std::vector<std::int64_t> primes;
  std::optional<double> alpha, delta, epsilon, kappa;
  std::optional<std::int64_t> grid;
  std::optional<std::int64_t> levels;
  std::string preset = "dyadic";
  std::string format = "text";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::int64_t> prime_list(const Options& o) {
  if (o.p && !o.primes.empty()) throw UsageError("--p and --primes are mutually exclusive");
  if (o.p) return {*o.p};
  if (o.primes.empty()) throw UsageError("one of --p or --primes is required");
  return o.primes;
}

std::string rational_string(const Rational& r) { return r.get_str(); }

std::string method_name(MahlerMethod m) {
  switch (m) {
    case MahlerMethod::Quadrature:
      return "quadrature";
    case MahlerMethod::Jensen:
      return "jensen";
    case MahlerMethod::Exact:
      return "exact";
  }
  return "";
}

TrigPoly singer_poly(std::int64_t p) { return from_support(singer_set(p).support(), true); }

Report cmd_singer(const Options& o) {
  Report r{"singer", {}, {}};
  const auto ps = prime_list(o);
  if (o.p) {
    const auto s = singer_set(*o.p);
    r.set("p", s.p);
    r.set("q", s.q);
    r.set("residues", s.residues);
    r.set("perfect_difference", verify_perfect_difference_set(s.support(), s.q));
    return r;
  }
  Table t{"sets", {"p", "q", "size", "residues", "perfect_difference"}, {}};
  for (auto p : ps) {
    const auto s = singer_set(p);
    std::string res;
    for (auto x : s.residues) res += (res.empty() ? "" : " ") + std::to_string(x);
    t.rows.push_back({s.p, s.q, static_cast<std::int64_t>(s.residues.size()), res,
                      verify_perfect_difference_set(s.support(), s.q)});
  }
  r.table = std::move(t);
  return r;
}

Report cmd_sidon(const Options& o) {
  Report r{"sidon", {}, {}};
  Table t{"sets",
          {"p", "q", "size", "is_sidon", "is_b2_1", "distinct_differences", "max_multiplicity", "lindstrom_holds",
           "l4_obstruction", "l4_lower_bound", "l4_obstruction_value"},
          {}};
  for (auto p : prime_list(o)) {
    const auto s = singer_set(p);
    const auto sup = s.support();
    const auto st = difference_stats(sup);
    const auto l4 = l4_obstruction(sup);
    t.rows.push_back({s.p, s.q, static_cast<std::int64_t>(sup.size()), is_sidon(sup), is_bhg(sup, 2, 1), st.distinct,
                      st.max_multiplicity, lindstrom_bound_check(sup, s.q - 1), rational_string(l4.value),
                      rational_string(l4.lower_bound), l4.value.get_d()});
  }
  r.table = std::move(t);
  return r;
}

Report cmd_flatness(const Options& o) {
  Report r{"flatness", {}, {}};
  const double alpha = o.alpha.value_or(1.0);
  QuadratureConfig cfg;
  if (o.grid) {
    if (*o.grid < 16) throw UsageError("--grid must be >= 16");
    cfg.max_grid = static_cast<std::size_t>(*o.grid);
  }
  r.set("alpha", alpha);
  r.set("max_grid", static_cast<std::int64_t>(cfg.max_grid));
  Table t{"rows",
          {"p", "q", "l1_norm", "defect", "discrete_mean", "closed_form", "l1_est_error", "grid", "converged"},
          {}};
  for (auto p : prime_list(o)) {
    const auto poly = singer_poly(p);
    const auto l1 = lp_norm(poly, 1.0, cfg);
    NodeParams np;
    np.q = p * p + p + 1;
    const double dm = discrete_mean(poly, build_nodes(NodeKind::Roots, np), alpha);
    t.rows.push_back({p, np.q, l1.value, 1.0 - l1.value, dm, singer_node_mean(p, alpha), l1.est_error,
                      static_cast<std::int64_t>(l1.grid_size), l1.converged});
  }
  r.table = std::move(t);
  return r;
}

Report cmd_mahler(const Options& o) {
  Report r{"mahler", {}, {}};
  const double alpha = o.alpha.value_or(0.6);
  const std::int64_t n = o.levels.value_or(3);
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
  if (n < 1) throw UsageError("--levels must be >= 1");
  QuadratureConfig cfg;
  if (o.grid) cfg.max_grid = static_cast<std::size_t>(*o.grid);
  const auto bump = TrigPoly::cosine_bump(alpha, n);
  const auto m = mahler_measure(bump, cfg);
  const double a = alpha / (1.0 + std::sqrt(1.0 - alpha * alpha));
  const auto disc = mahler_discrete(bump, static_cast<std::size_t>(2 * n));
  r.set("alpha", alpha);
  r.set("n", n);
  r.set("mahler", m.value);
  r.set("est_error", m.est_error);
  r.set("method", method_name(m.method));
  r.set("converged", m.converged);
  r.set("closed_form", 1.0 / (1.0 + a * a));
  r.set("sampled_points", 2 * n);
  r.set("sampled_mahler", disc.value);
  r.set("sampled_closed_form", std::sqrt((1.0 + alpha) * (1.0 - alpha)));
  if (o.p || !o.primes.empty()) {
    Table t{"singer", {"p", "q", "mahler", "est_error", "method", "grid", "converged"}, {}};
    for (auto p : prime_list(o)) {
      const auto res = mahler_measure(singer_poly(p), cfg);
      t.rows.push_back({p, p * p + p + 1, res.value, res.est_error, method_name(res.method),
                        static_cast<std::int64_t>(res.grid_size), res.converged});
    }
    r.table = std::move(t);
  }
  return r;
}

Report cmd_mz(const Options& o) {
  Report r{"mz", {}, {}};
  const std::int64_t p = o.p.value_or(2);
  if (!o.primes.empty()) throw UsageError("mz takes --p, not --primes");
  const double alpha = o.alpha.value_or(1.0);
  const double delta = o.delta.value_or(0.1);
  const double eps = o.epsilon.value_or(0.5);
  const double kappa = o.kappa.value_or(2.0);
  const std::int64_t trials = o.levels.value_or(20);
  if (trials < 0) throw UsageError("--levels must be >= 0");
  const std::size_t grid = static_cast<std::size_t>(o.grid.value_or(4096));

  const auto s = singer_set(p);
  const auto poly = from_support(s.support(), true);
  NodeParams np;
  np.q = s.q;
  np.p = p;
  np.delta = delta;
  np.epsilon = eps;
  const auto roots = build_nodes(NodeKind::Roots, np);
  r.set("p", p);
  r.set("q", s.q);
  r.set("alpha", alpha);
  r.set("delta", delta);
  r.set("epsilon", eps);
  r.set("kappa", kappa);
  r.set("discrete_mean", discrete_mean(poly, roots, alpha));
  r.set("closed_form", singer_node_mean(p, alpha));
  const auto drift = perturbation_drift(s, delta, eps);
  r.set("perturbation_drift", drift.max_drift);
  r.set("bernstein_envelope", drift.bernstein_envelope);
  r.set("stated_envelope", drift.stated_envelope);
  const auto sep = separation_analysis(roots);
  r.set("roots_min_product", sep.min_pairwise_product);
  r.set("roots_lower_bound", sep.lower_bound);
  r.set("roots_pair_violations", static_cast<std::int64_t>(sep.pair_bound_violations));
  r.set("gamma_squared", sep.gamma_sq_partial);
  r.set("carleson_constant", carleson_constant(sep.gamma_sq_partial));
  const auto isep = separation_analysis(build_nodes(NodeKind::Interleaved, np));
  r.set("interleaved_min_product", isep.min_pairwise_product);
  r.set("interleaved_lower_bound", isep.lower_bound);
  r.set("interleaved_lower_bound_holds", isep.lower_bound_holds);
  const auto u = helson_szego_u_bound(s.q, kappa, delta, 0, grid);
  r.set("u_sup", u.sup_u);
  r.set("u_bound", u.bound);
  r.set("u_holds", u.holds);
  r.set("u_direct_discrepancy", u.direct_discrepancy ? cli::Value(*u.direct_discrepancy) : cli::Value(cli::Null{}));
  const auto v = helson_szego_v_report(s.q, kappa, delta, 0, grid);
  r.set("v_sup", v.sup_v);
  r.set("v_below_half_pi", v.below_half_pi);

  SeededRng rng(o.seed);
  Table t{"sweep", {"trial", "degree", "m", "lhs", "rhs", "holds", "bernstein_ratio"}, {}};
  const auto phi = ConvexPhi::power(std::max(1.0, alpha));
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto deg = rng.uniform_int(1, 64);
    std::map<std::int64_t, Complex> c;
    for (std::int64_t k = 0; k <= deg; ++k) c[k] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const TrigPoly q(c);
    const auto m = static_cast<std::size_t>(std::ceil((1.0 + kappa) * 2.0 * static_cast<double>(deg)));
    const auto chk = mz_upper_check(q, phi, kappa, m, rng.uniform());
    t.rows.push_back({i, deg, static_cast<std::int64_t>(m), chk.lhs, chk.rhs, chk.holds,
                      bernstein_ratio(q, std::max(1.0, alpha))});
  }
  r.table = std::move(t);
  return r;
}

Report cmd_riesz(const Options& o) {
  Report r{"riesz", {}, {}};
  const std::int64_t K = o.levels.value_or(4);
  if (K < 0 || K > 62) throw UsageError("--levels must lie in [0, 62]");
  const std::size_t grid = static_cast<std::size_t>(o.grid.value_or(4096));
  if (grid < 1) throw UsageError("--grid must be >= 1");
  std::vector<TrigPoly> polys;
  if (o.preset == "dyadic") {
    IntegerForm form;
    form.weights = {{0, 1}, {1, 1}};
    form.denominator = 2;
    polys.assign(static_cast<std::size_t>(K), TrigPoly(form));
  } else if (o.preset == "singer") {
    for (std::int64_t p = 2; static_cast<std::int64_t>(polys.size()) < K; ++p) {
      if (is_prime(p)) polys.push_back(singer_poly(p));
    }
  } else {
    throw UsageError("unknown preset '" + o.preset + "' (dyadic, singer)");
  }
  const auto spec = dynamical_origin_dilations(polys);
  const auto k = static_cast<std::size_t>(K);
  r.set("preset", o.preset);
  r.set("levels", K);
  std::vector<std::int64_t> dil;
  for (const auto& f : spec.factors) dil.push_back(f.dilation);
  r.set("dilations", dil);
  r.set("heights", spec.heights);
  r.set("dynamical_origin", spec.dynamical_origin);
  try {
    r.set("dissociated", dissociation(spec.factors).dissociated);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    r.set("dissociated", cli::Null{});
  }
  std::optional<RationalTrigPoly> prod;
  try {
    prod = partial_product(spec, k);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  r.set("budget_exceeded", !prod.has_value());
  if (prod) {
    r.set("l2_check", rational_string(prod->coefficient(0)));
    r.set("l2_check_exact", prod->coefficient(0) == 1);
    r.set("coefficient_count", static_cast<std::int64_t>(prod->term_count()));
  } else {
    r.set("l2_check", cli::Null{});
    r.set("l2_check_exact", cli::Null{});
    r.set("coefficient_count", cli::Null{});
  }
  const auto mp = mahler_product(spec, k);
  r.set("mahler_product", mp.value);
  r.set("mahler_product_est_error", mp.est_error);
  r.set("mahler_factors", mp.factor_values);
  if (o.preset == "dyadic") r.set("mahler_product_expected", std::ldexp(1.0, static_cast<int>(-K)));
  const auto range = pointwise_partial_product(spec, k, grid);
  r.set("grid", static_cast<std::int64_t>(grid));
  r.set("pointwise_min", range.min);
  r.set("pointwise_max", range.max);
  if (prod) {
    Table t{"coefficients", {"frequency", "coefficient", "value"}, {}};
    for (const auto& [f, c] : prod->coefficients()) t.rows.push_back({f, rational_string(c), c.get_d()});
    r.table = std::move(t);
  }
  return r;
}

Report cmd_verify_all(const Options& o, bool& all_passed) {
  Report r{"verify-all", {}, {}};
  const auto results = run_acceptance(o.seed);
  all_passed = true;
  Table t{"criteria", {"id", "name", "passed", "detail"}, {}};
  for (const auto& c : results) {
    all_passed = all_passed && c.passed;
    t.rows.push_back({static_cast<std::int64_t>(c.id), c.name, c.passed, c.detail});
  }
  r.set("seed", static_cast<std::int64_t>(o.seed));
  r.set("all_passed", all_passed);
  r.table = std::move(t);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatlab: flat polynomials, Singer sets, sampling and Riesz products"};
  app.require_subcommand(1, 1);
  Options o;
  const std::vector<std::string> names{"singer", "sidon", "flatness", "mahler", "mz", "riesz", "verify-all"};
  for (const auto& name : names) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--p", o.p, "prime");
    sub->add_option("--primes", o.primes, "comma-separated primes")->delimiter(',');
    sub->add_option("--alpha", o.alpha);
    sub->add_option("--delta", o.delta);
    sub->add_option("--epsilon", o.epsilon);
    sub->add_option("--kappa", o.kappa);
    sub->add_option("--grid", o.grid);
    sub->add_option("--levels", o.levels);
    sub->add_option("--preset", o.preset);
    sub->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--seed", o.seed);
    sub->add_option("--threads", o.threads)->check(CLI::Range(1u, 256u));
    sub->add_option("--out", o.out);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << kGrammar;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << kGrammar;
    return 2;
  }

  set_thread_count(o.threads);
  const std::string cmd = app.get_subcommands().front()->get_name();
  const auto format = o.format == "json" ? cli::Format::Json : o.format == "csv" ? cli::Format::Csv : cli::Format::Text;
  int status = 0;
  Report report;
  try {
    if (cmd == "singer") report = cmd_singer(o);
    else if (cmd == "sidon") report = cmd_sidon(o);
    else if (cmd == "flatness") report = cmd_flatness(o);
    else if (cmd == "mahler") report = cmd_mahler(o);
    else if (cmd == "mz") report = cmd_mz(o);
    else if (cmd == "riesz") report = cmd_riesz(o);
    else {
      bool ok = true;
      report = cmd_verify_all(o, ok);
      status = ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << kGrammar;
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n" << kGrammar;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }

  const std::string text = cli::render(report, format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "internal error: cannot write " << o.out << "\n";
      return 1;
    }
  }
  return status;
}
