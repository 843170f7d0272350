// Command-line front end: generate spaces, build fillings, run the
// verification batteries, and export graphs, measures and report series.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "hypfill/filling.hpp"
#include "hypfill/function_spaces.hpp"
#include "hypfill/generators.hpp"
#include "hypfill/geodesics.hpp"
#include "hypfill/graph_export.hpp"
#include "hypfill/io.hpp"
#include "hypfill/measure.hpp"
#include "hypfill/rough_similarity.hpp"
#include "hypfill/tree_boundary.hpp"
#include "hypfill/uniformize.hpp"

using nlohmann::ordered_json;
using namespace hypfill;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string space_file, tree_file, weights_file;
  double alpha = 2.0;
  double tau = 1.5;
  double eps = 0.0;  // 0 means log(alpha)
  double beta = 0.0, theta = 0.0, p = 0.0;
  int depth = -1;  // -1 means stabilization + 2
  std::uint64_t seed = 1;
  int samples = 256;
  int functions = 100;
  bool counterexample = false;
  bool collapse = false;
  bool timing = false;

  double eps_value() const { return eps > 0.0 ? eps : std::log(alpha); }

  // Exactly one of beta / (theta, p) must be provided; the other side is
  // derived through beta = eps p (1 - theta).
  void resolve_measure_params() {
    bool have_beta = beta > 0.0, have_theta = theta > 0.0;
    if (have_beta == have_theta)
      throw BadParams("give exactly one of --beta or --theta (with --p)");
    if (p <= 0.0) p = 2.0;
    if (have_theta)
      beta = eps_value() * p * (1.0 - theta);
    else
      theta = 1.0 - beta / (eps_value() * p);
  }

  ordered_json echo() const {
    ordered_json j;
    j["space"] = space_file;
    if (!tree_file.empty()) j["tree"] = tree_file;
    if (!weights_file.empty()) j["weights"] = weights_file;
    j["alpha"] = alpha;
    j["tau"] = tau;
    j["eps"] = eps_value();
    if (beta > 0.0) {
      j["beta"] = beta;
      j["theta"] = theta;
      j["p"] = p;
    }
    j["depth"] = depth;
    j["seed"] = seed;
    j["samples"] = samples;
    j["functions"] = functions;
    j["counterexample_mode"] = counterexample;
    j["collapse_mode"] = collapse;
    return j;
  }
};

void apply_env_seed(RunConfig& cfg) {
  if (const char* s = std::getenv("HYPFILL_SEED"))
    cfg.seed = std::strtoull(s, nullptr, 10);
}

FillingGraph build_graph(const RunConfig& cfg, const FiniteMetricSpace& z) {
  int ns = stabilization_level(z, cfg.alpha, cfg.tau);
  int depth = cfg.depth >= 0 ? cfg.depth : ns + 2;
  NetHierarchy nets = build_nets(z, cfg.alpha, std::max(depth, 0));
  return FillingGraph::build(z, nets, cfg.tau, depth, cfg.counterexample);
}

struct ReportBuilder {
  ordered_json checks = ordered_json::array();
  bool failed = false;

  void add(std::string name, bool pass, ordered_json data, bool diagnostic = false) {
    ordered_json c;
    c["name"] = std::move(name);
    c["status"] = diagnostic ? "diagnostic" : (pass ? "pass" : "fail");
    for (auto& [k, v] : data.items()) c[k] = v;
    if (!diagnostic && !pass) failed = true;
    checks.push_back(std::move(c));
  }
};

void write_report(const std::string& path, const RunConfig& cfg,
                  const ReportBuilder& rb, double elapsed_ms) {
  ordered_json j;
  j["tool"] = "hypfill";
  j["version"] = kVersion;
  j["config"] = cfg.echo();
  j["checks"] = rb.checks;
  if (cfg.timing) j["timing_ms"] = elapsed_ms;
  if (path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text(path, j.dump(2) + "\n");
}

BoundaryMeasure load_weights(const RunConfig& cfg, const FiniteMetricSpace& z) {
  if (cfg.weights_file.empty()) return BoundaryMeasure::counting(z.size());
  return read_measure(cfg.weights_file, z.size());
}

void run_analyze_checks(const RunConfig& cfg, const std::string& check,
                        ReportBuilder& rb) {
  FiniteMetricSpace z = read_space(cfg.space_file);
  FillingGraph g = build_graph(cfg, z);
  bool all = check == "all";

  if (all || check == "hyperbolicity") {
    auto h = hyperbolicity_constant(g, std::max(cfg.samples, 400), cfg.seed);
    rb.add("hyperbolicity", true,
           {{"C", h.constant},
            {"exhaustive", h.exhaustive},
            {"scanned_vertices", h.scanned_vertices},
            {"witness",
             {{"u", {h.witness_u.point, h.witness_u.level}},
              {"v", {h.witness_v.point, h.witness_v.level}},
              {"w", {h.witness_w.point, h.witness_w.level}}}}},
           true);
  }
  if ((all || check == "product") && g.tau() > 1.0) {
    auto r = product_comparison_check(g);
    rb.add("product_comparison", r.max_violation == 0.0,
           {{"observed_min", r.observed_min},
            {"observed_max", r.observed_max},
            {"lower_bound", r.lower_bound},
            {"upper_bound", r.upper_bound}});
  }
  if (all || check == "degrees") {
    auto d = degree_stats(g);
    rb.add("degrees", true,
           {{"max_degree", d.max_degree}, {"per_level_max", d.per_level_max}},
           true);
  }
  if ((all || check == "geodesics") &&
      g.tau() >= (cfg.alpha + 1.0) / (cfg.alpha - 1.0) - 1e-12) {
    auto rep = geodesic_structure_check(g);
    rb.add("geodesic_structure", rep.all_passed(),
           {{"n0", rep.n0},
            {"no_spike", rep.no_spike},
            {"no_ladder", rep.no_ladder},
            {"no_down_up", rep.no_down_up},
            {"horizontal_bounded", rep.horizontal_bounded},
            {"normal_form_exists", rep.normal_form_exists},
            {"pairs", rep.pairs_checked},
            {"geodesics", rep.geodesics_checked},
            {"capped_pairs", rep.capped_pairs}});
  }
  if (all || check == "whitney" || check == "snowflake" || check == "collapse") {
    auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
    auto rep = verify_uniformization(u, cfg.samples * 64, cfg.seed);
    if (all || check == "whitney")
      rb.add("whitney", rep.whitney_max_err <= 1e-12,
             {{"max_err", rep.whitney_max_err},
              {"diam_eps", rep.diam_eps},
              {"diam_ok", rep.diam_ok}});
    if ((all || check == "snowflake") && !cfg.collapse && g.tau() > 1.0)
      rb.add("snowflake",
             rep.snowflake_max_violation == 0.0 &&
                 rep.vertex_bound_max_violation == 0.0,
             {{"C1", rep.c1},
              {"C2", rep.c2},
              {"boundary_violation", rep.snowflake_max_violation},
              {"vertex_violation", rep.vertex_bound_max_violation},
              {"comp_ratio_min", rep.comp_ratio_min},
              {"comp_ratio_max", rep.comp_ratio_max}});
    if (all || check == "collapse")
      rb.add("collapse_profile", true, {{"D", rep.collapse_profile}}, true);
  }
  if ((all || check == "uniformity") && g.tau() > 1.0) {
    auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
    auto diag = uniformity_diagnostic(u, cfg.samples * 16, cfg.seed);
    rb.add("uniformity", true,
           {{"max_cone_ratio", diag.max_cone_ratio},
            {"max_length_ratio", diag.max_length_ratio},
            {"curves", diag.curves}},
           true);
  }
  if ((all || check == "rough_similarity") && g.tau() > 1.0 && !cfg.collapse) {
    auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
    auto rep = rough_similarity(u, cfg.alpha, cfg.tau, cfg.samples * 40, cfg.seed);
    rb.add("rough_similarity", true,
           {{"slope", rep.slope},
            {"best_C", rep.best_c},
            {"coverage_C", rep.coverage_c},
            {"pairs", rep.pairs}},
           true);
  }
}

void run_measure_checks(const RunConfig& cfg, ReportBuilder& rb,
                        const std::string& dump_path) {
  FiniteMetricSpace z = read_space(cfg.space_file);
  FillingGraph g = build_graph(cfg, z);
  auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
  LiftedMeasure m = lift_measure(u, load_weights(cfg, z), cfg.beta);
  auto rep = verify_measure(m, cfg.samples, cfg.seed);
  rb.add("neighbor_mass", rep.neighbor_max_ratio <= rep.neighbor_bound,
         {{"N", rep.neighbor_exponent},
          {"doubling_constant", rep.doubling_constant},
          {"bound", rep.neighbor_bound},
          {"max_ratio", rep.neighbor_max_ratio}});
  rb.add("doubling_sweep", std::isfinite(rep.doubling_max),
         {{"doubling_max", rep.doubling_max},
          {"samples", rep.samples},
          {"seed", rep.seed}});
  rb.add("codimension_band", rep.codim_hi > 0.0 && std::isfinite(rep.codim_hi),
         {{"lo", rep.codim_lo}, {"hi", rep.codim_hi}});
  rb.add("dimension_exponents", true,
         {{"s_nu", rep.s_nu},
          {"eta", rep.eta},
          {"s_beta_target", rep.s_beta_target},
          {"s_beta_min_const", rep.s_beta_min_const}},
         true);
  rb.add("total_mass", std::isfinite(m.total_mass()), {{"total", m.total_mass()}});

  // Empirical lower bound for the 1-Poincare constant over seeded
  // functions paired with their exact per-edge gradients.
  std::vector<FunctionWithGradient> fns;
  for (std::uint64_t s = 0; s < 3; ++s) {
    GraphFunction gf = random_graph_function(g, cfg.seed + s);
    FunctionWithGradient f;
    f.value = gf.value;
    f.gradient.resize(g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i)
      f.gradient[i] = std::abs(f.value[g.edges()[i].u] - f.value[g.edges()[i].v]) /
                      u.edge_length(static_cast<int>(i));
    fns.push_back(std::move(f));
  }
  double pr = poincare_ratio(m, fns, std::max(16, cfg.samples / 4), cfg.seed);
  rb.add("poincare_ratio", std::isfinite(pr),
         {{"max_quotient", pr}, {"functions", 3}}, true);
  if (!dump_path.empty()) write_text(dump_path, measure_to_json(m));
}

ordered_json energy_report_json(const EnergyReport& r) {
  auto num = [](double v) {
    return std::isnan(v) ? ordered_json("degenerate") : ordered_json(v);
  };
  ordered_json j;
  j["kind"] = r.kind;
  j["seed"] = r.seed;
  j["theta"] = r.theta;
  j["p"] = r.p;
  j["beta"] = r.beta;
  j["eps"] = r.eps;
  j["besov_seminorm_p"] = r.besov_seminorm_p;
  j["lp_boundary"] = r.lp_boundary;
  j["newtonian_gradient_energy"] = r.newtonian_gradient_energy;
  j["lp_graph"] = r.lp_graph;
  if (r.kind == "extension") {
    j["roundtrip_error"] = r.roundtrip_error;
    j["ratio_grad_over_besov"] = num(r.ratio_grad_over_besov);
    j["ratio_lp_graph_over_lp_boundary"] = num(r.ratio_lp_graph_over_lp_boundary);
  } else {
    j["ratio_besov_over_grad"] = num(r.ratio_besov_over_grad);
    j["ratio_lp_trace"] = num(r.ratio_lp_trace);
  }
  return j;
}

void run_roundtrip(const RunConfig& cfg, ReportBuilder& rb,
                   const std::string& dump_functions = "") {
  FiniteMetricSpace z = read_space(cfg.space_file);
  FillingGraph g = build_graph(cfg, z);
  auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
  auto nu = load_weights(cfg, z);
  auto sum = verify_trace_extension(u, nu, cfg.theta, cfg.p, cfg.functions, cfg.seed);
  if (!dump_functions.empty()) {
    ordered_json all = ordered_json::array();
    for (const auto& rep : sum.reports) all.push_back(energy_report_json(rep));
    write_text(dump_functions, all.dump(2) + "\n");
  }
  int passes = 0;
  for (const auto& r : sum.reports)
    if (r.kind == "extension" && r.roundtrip_error <= 1e-9) ++passes;
  rb.add("roundtrip_identity", sum.max_roundtrip_error <= 1e-9,
         {{"max_error", sum.max_roundtrip_error},
          {"passes", passes},
          {"functions", cfg.functions}});
  rb.add("norm_ratios", true,
         {{"max_grad_over_besov", sum.max_ratio_grad_over_besov},
          {"max_lp_graph_over_lp_boundary", sum.max_ratio_lp},
          {"max_besov_over_grad", sum.max_ratio_besov_over_grad},
          {"degenerate", sum.degenerate},
          {"theta", cfg.theta},
          {"p", cfg.p},
          {"beta", cfg.beta}},
         true);
}

int run_series(const std::string& kind, const std::vector<std::string>& from,
               const std::string& out) {
  if (from.empty()) throw MissingData("no reports given");
  std::string csv;
  int rows = 0;
  if (kind == "hyperbolicity_vs_depth") {
    csv = "index,depth,C\n";
    for (std::size_t i = 0; i < from.size(); ++i) {
      auto j = ordered_json::parse(read_text(from[i]));
      for (const auto& c : j.at("checks"))
        if (c.at("name") == "hyperbolicity") {
          csv += std::to_string(i) + "," + j.at("config").at("depth").dump() +
                 "," + c.at("C").dump() + "\n";
          ++rows;
        }
    }
  } else if (kind == "ratio_vs_theta") {
    csv = "theta,p,max_grad_over_besov,max_lp,max_besov_over_grad\n";
    for (const auto& f : from) {
      auto j = ordered_json::parse(read_text(f));
      for (const auto& c : j.at("checks"))
        if (c.at("name") == "norm_ratios") {
          csv += c.at("theta").dump() + "," + c.at("p").dump() + "," +
                 c.at("max_grad_over_besov").dump() + "," +
                 c.at("max_lp_graph_over_lp_boundary").dump() + "," +
                 c.at("max_besov_over_grad").dump() + "\n";
          ++rows;
        }
    }
  } else if (kind == "collapse_Dn") {
    csv = "n,D\n";
    for (const auto& f : from) {
      auto j = ordered_json::parse(read_text(f));
      for (const auto& c : j.at("checks"))
        if (c.at("name") == "collapse_profile") {
          const auto& d = c.at("D");
          for (std::size_t n = 0; n < d.size(); ++n) {
            csv += std::to_string(n) + "," + d[n].dump() + "\n";
            ++rows;
          }
        }
    }
  } else if (kind == "codim_band") {
    csv = "index,beta,lo,hi\n";
    for (std::size_t i = 0; i < from.size(); ++i) {
      auto j = ordered_json::parse(read_text(from[i]));
      for (const auto& c : j.at("checks"))
        if (c.at("name") == "codimension_band") {
          csv += std::to_string(i) + "," + j.at("config").at("beta").dump() +
                 "," + c.at("lo").dump() + "," + c.at("hi").dump() + "\n";
          ++rows;
        }
    }
  } else {
    throw BadParams("unknown series kind: " + kind);
  }
  if (rows == 0) throw MissingData("reports contain no rows for " + kind);
  if (out.empty())
    std::cout << csv;
  else
    write_text(out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic fillings of finite metric spaces"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string config_file;
  app.add_option("--config", config_file, "JSON config file (flags override)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", cfg.space_file, "space file (CSV or JSON)");
    sub->add_option("--alpha", cfg.alpha, "scale base > 1");
    sub->add_option("--tau", cfg.tau, "ball enlargement > 1");
    sub->add_option("--eps", cfg.eps, "uniformization parameter (default log alpha)");
    sub->add_option("--depth", cfg.depth, "truncation level (default stabilization+2)");
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--samples", cfg.samples, "sweep sample count");
    sub->add_flag("--counterexample-mode", cfg.counterexample, "allow tau <= 1");
    sub->add_flag("--collapse", cfg.collapse, "allow eps > log alpha");
    sub->add_flag("--timing", cfg.timing, "include timing in reports");
    sub->add_option("--weights", cfg.weights_file, "boundary weights CSV");
  };

  auto* gen = app.add_subcommand("gen", "generate a space or tree");
  std::string gen_kind, gen_out = "space.json", gen_base;
  int gen_k = 5, gen_dim = 2, gen_depth = 3, gen_n = 3, gen_mv = 200, gen_mc = 4;
  double gen_ratio = 1.0 / 3.0, gen_rho = 0.05, gen_exp = 0.8;
  std::vector<int> gen_slits;
  std::uint64_t gen_seed = 1;
  gen->add_option("--kind", gen_kind,
                  "interval_net|grid|cantor|slit_example|slit_family|snowflake|random_tree")
      ->required();
  gen->add_option("--k", gen_k, "points per side");
  gen->add_option("--dim", gen_dim, "grid dimension");
  gen->add_option("--gen-depth", gen_depth, "cantor depth");
  gen->add_option("--ratio", gen_ratio, "cantor contraction");
  gen->add_option("--n", gen_n, "slit depth");
  gen->add_option("--rho", gen_rho, "slit half-gap");
  gen->add_option("--slits", gen_slits, "slit family depths");
  gen->add_option("--base", gen_base, "snowflake base space file");
  gen->add_option("--exponent", gen_exp, "snowflake exponent");
  gen->add_option("--max-vertices", gen_mv, "random tree size cap");
  gen->add_option("--max-children", gen_mc, "random tree branching cap");
  gen->add_option("--tree-seed", gen_seed, "random tree seed");
  gen->add_option("--out", gen_out, "output file");

  auto* build = app.add_subcommand("build", "build filling + uniformization and export");
  std::string out_dir = "out";
  std::vector<std::string> formats = {"json"};
  add_common(build);
  build->add_option("--out-dir", out_dir, "output directory");
  build->add_option("--format", formats, "graphml|dot|json (repeatable)");

  auto* exp = app.add_subcommand("export", "export one artifact");
  std::string what = "filling", fmt = "json", exp_out;
  add_common(exp);
  exp->add_option("--what", what, "filling|uniformized|boundary");
  exp->add_option("--format", fmt, "graphml|dot|json|csv");
  exp->add_option("--out", exp_out, "output file (stdout if empty)");

  auto* analyze = app.add_subcommand("analyze", "filling/uniformization checks");
  std::string check = "all", report_file;
  add_common(analyze);
  analyze->add_option(
      "--check", check,
      "all|whitney|snowflake|hyperbolicity|product|degrees|geodesics|collapse|"
      "uniformity|rough_similarity|tree_roundtrip");
  analyze->add_option("--tree", cfg.tree_file, "tree file for tree_roundtrip");
  analyze->add_option("--report", report_file, "report JSON path (stdout if empty)");

  auto* meas = app.add_subcommand("measure", "lifted measure checks");
  std::string dump_file;
  add_common(meas);
  meas->add_option("--beta", cfg.beta, "lift exponent");
  meas->add_option("--theta", cfg.theta, "smoothness (derives beta)");
  meas->add_option("--p", cfg.p, "integrability exponent");
  meas->add_option("--report", report_file, "report JSON path");
  meas->add_option("--dump", dump_file, "measure dump JSON path");

  auto* rt = app.add_subcommand("roundtrip", "trace/extension harness");
  std::string dump_functions;
  add_common(rt);
  rt->add_option("--theta", cfg.theta, "smoothness in (0,1)")->required();
  rt->add_option("--p", cfg.p, "integrability exponent >= 1")->required();
  rt->add_option("--functions", cfg.functions, "seeded functions per direction");
  rt->add_option("--report", report_file, "report JSON path");
  rt->add_option("--dump-functions", dump_functions,
                 "per-function energy reports JSON path");

  auto* verify = app.add_subcommand("verify", "full battery");
  add_common(verify);
  verify->add_option("--beta", cfg.beta, "lift exponent");
  verify->add_option("--theta", cfg.theta, "smoothness");
  verify->add_option("--p", cfg.p, "integrability exponent");
  verify->add_option("--functions", cfg.functions, "seeded functions");
  verify->add_option("--report", report_file, "report JSON path");

  auto* series = app.add_subcommand("series", "emit plot-ready CSV from reports");
  std::string series_kind, series_out;
  std::vector<std::string> series_from;
  series->add_option("--kind", series_kind,
                     "hyperbolicity_vs_depth|ratio_vs_theta|collapse_Dn|codim_band")
      ->required();
  series->add_option("--from", series_from, "report JSON files")->required();
  series->add_option("--out", series_out, "CSV path (stdout if empty)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) {
      auto j = ordered_json::parse(read_text(config_file));
      if (j.contains("space") && cfg.space_file.empty())
        cfg.space_file = j["space"].get<std::string>();
      if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
      if (j.contains("tau")) cfg.tau = j["tau"].get<double>();
      if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
      if (j.contains("beta") && cfg.beta == 0.0) cfg.beta = j["beta"].get<double>();
      if (j.contains("theta") && cfg.theta == 0.0) cfg.theta = j["theta"].get<double>();
      if (j.contains("p") && cfg.p == 0.0) cfg.p = j["p"].get<double>();
      if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
      if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
      if (j.contains("functions")) cfg.functions = j["functions"].get<int>();
    }
    apply_env_seed(cfg);
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - t0)
          .count();
    };

    if (gen->parsed()) {
      if (gen_kind == "random_tree") {
        write_tree(gen_out, random_tree(gen_mv, gen_mc, gen_seed));
      } else {
        FiniteMetricSpace z =
            gen_kind == "interval_net" ? interval_net(gen_k)
            : gen_kind == "grid"       ? grid(gen_dim, gen_k)
            : gen_kind == "cantor"     ? cantor(gen_depth, gen_ratio)
            : gen_kind == "slit_example"
                ? slit_example(gen_n, gen_rho)
                : gen_kind == "slit_family"
                      ? slit_family(gen_slits)
                      : gen_kind == "snowflake"
                            ? snowflake(read_space(gen_base), gen_exp)
                            : throw BadParams("unknown kind " + gen_kind);
        write_space(gen_out, z);
      }
      return 0;
    }
    if (series->parsed()) return run_series(series_kind, series_from, series_out);

    if (build->parsed()) {
      FiniteMetricSpace z = read_space(cfg.space_file);
      FillingGraph g = build_graph(cfg, z);
      auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
      std::filesystem::create_directories(out_dir);
      for (const std::string& f : formats) {
        if (f == "json") {
          write_text(out_dir + "/filling.json", filling_to_json(g));
          write_text(out_dir + "/uniformized.json", uniformized_to_json(u));
        } else if (f == "graphml") {
          write_text(out_dir + "/filling.graphml", filling_to_graphml(g));
          write_text(out_dir + "/uniformized.graphml", uniformized_to_graphml(u));
        } else if (f == "dot") {
          write_text(out_dir + "/filling.dot", filling_to_dot(g));
          write_text(out_dir + "/uniformized.dot", uniformized_to_dot(u));
        } else {
          throw BadParams("unknown format " + f);
        }
      }
      write_text(out_dir + "/boundary.csv", boundary_to_csv(boundary_metric(u)));
      return 0;
    }

    if (exp->parsed()) {
      FiniteMetricSpace z = read_space(cfg.space_file);
      FillingGraph g = build_graph(cfg, z);
      std::string payload;
      if (what == "filling")
        payload = fmt == "graphml" ? filling_to_graphml(g)
                  : fmt == "dot"   ? filling_to_dot(g)
                                   : filling_to_json(g);
      else if (what == "uniformized") {
        auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
        payload = fmt == "graphml" ? uniformized_to_graphml(u)
                  : fmt == "dot"   ? uniformized_to_dot(u)
                                   : uniformized_to_json(u);
      } else if (what == "boundary") {
        auto u = UniformizedFilling::build(g, cfg.eps_value(), cfg.collapse);
        payload = boundary_to_csv(boundary_metric(u));
      } else {
        throw BadParams("unknown artifact " + what);
      }
      if (exp_out.empty())
        std::cout << payload;
      else
        write_text(exp_out, payload);
      return 0;
    }

    ReportBuilder rb;
    if (analyze->parsed()) {
      if (check == "tree_roundtrip") {
        RootedTree t = read_tree(cfg.tree_file);
        auto res = tree_roundtrip_check(t, cfg.eps_value(), cfg.tau);
        rb.add("tree_roundtrip", res.isomorphic,
               {{"filling_vertices", res.filling_vertices},
                {"tree_vertices", res.tree_vertices},
                {"mismatch", res.mismatch}});
      } else {
        run_analyze_checks(cfg, check, rb);
      }
    } else if (meas->parsed()) {
      cfg.resolve_measure_params();
      run_measure_checks(cfg, rb, dump_file);
    } else if (rt->parsed()) {
      cfg.resolve_measure_params();
      run_roundtrip(cfg, rb, dump_functions);
    } else if (verify->parsed()) {
      cfg.resolve_measure_params();
      run_analyze_checks(cfg, "all", rb);
      run_measure_checks(cfg, rb, "");
      run_roundtrip(cfg, rb);
    }
    write_report(report_file, cfg, rb, elapsed());
    return rb.failed ? 1 : 0;
  } catch (const Error& e) {
    ordered_json err{{"error", e.code()}, {"what", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    ordered_json err{{"error", "Unhandled"}, {"what", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
