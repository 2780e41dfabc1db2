#include "algstoch/cli.hpp"

#include "algstoch/errors.hpp"
#include "algstoch/model.hpp"
#include "algstoch/rational.hpp"
#include "algstoch/report.hpp"
#include "algstoch/roof_category.hpp"
#include "algstoch/sheaves.hpp"
#include "algstoch/sites.hpp"
#include "algstoch/stochastic.hpp"
#include "algstoch/tropical.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>

namespace algstoch::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string model;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 1;

  std::string topology = "structural";
  std::string mode = "gluing";
  std::string presheaf;
  std::string object;
  std::string t = "0";
  std::string t_prime = "1";
  double kappa = 3.0;
  double cone_sigma = 1.0;
  std::size_t paths = 0;

  double alpha = 0.1;
  double sigma = 0.2;
  double x0 = 1.0;
  double horizon = 1.0;
  std::size_t steps = 0;

  std::string function = "w^3";
  std::string rule = "quadratic-variation";
  int halvings = 4;

  std::string alpha_exact = "0.1";
  std::string sigma_exact = "0.2";
  bool with_markers = false;

  std::string op = "exp";
  std::size_t order = 6;

  bool in_place = false;
};

const ProbabilityMeasure& measure_of(const Model& m) {
  if (!m.measure) throw PreconditionError("the probability topology needs a 'measure' section");
  return *m.measure;
}

void check_site(const Model& m, const Options& o, Report& r) {
  const auto topology = parse_topology(o.topology);
  r.params["topology"] = std::string(to_string(topology));
  append(r.records, m.category->validate());
  if (topology == Topology::structural) {
    const auto site = build_tau_structural(*m.category);
    r.results["covering_arrows"] = site.covering_arrow_count();
    append(r.records, verify_grothendieck(site));
    return;
  }
  const auto f = m.levels();
  append(r.records, check_monotone(f));
  if (topology == Topology::operadic) {
    const auto action = check_operad_action(f);
    append(r.records, action.records);
    r.results["operad_coverage"] = action.coverage;
  }
  const auto site = topology == Topology::operadic ? build_tau_operadic(f) : build_tau_P(f, measure_of(m));
  r.results["levels"] = site.levels.size();
  append(r.records, verify_grothendieck(site));
}

void check_roofs(const Model& m, const Options&, Report& r) {
  RoofCategory rc(*m.category);
  r.results["roofs"] = rc.roof_count();
  try {
    append(r.records, verify_roof_category(rc));
  } catch (const ClosureError& e) {
    r.records.push_back(make_record("roof-closure", "composition table", false, e.what()));
    return;
  }
  append(r.records, verify_grothendieck(build_structural_roof_topology(rc), "roofs "));
}

PresheafData chosen_presheaf(const Model& m, const Options& o) {
  if (!o.presheaf.empty()) return m.presheaf(o.presheaf);
  PresheafData constant{"constant", {}, {}};
  for (std::size_t i = 0; i < m.category->object_count(); ++i) constant.sections[m.category->object_id(i)] = {0.0};
  return constant;
}

void check_gluing(const Model& m, const Options& o, Report& r) {
  const auto topology = parse_topology(o.topology);
  const auto data = chosen_presheaf(m, o);
  r.params["topology"] = std::string(to_string(topology));
  r.params["presheaf"] = data.id;
  if (topology == Topology::structural) {
    append(r.records, check_sheaf_condition(build_tau_structural(*m.category), Presheaf(*m.category, data)));
    return;
  }
  const auto f = m.levels();
  const auto site = topology == Topology::operadic ? build_tau_operadic(f) : build_tau_P(f, measure_of(m));
  for (std::size_t p = 0; p < site.levels.size(); ++p) {
    const auto& level = site.levels[p];
    append(r.records,
           check_sheaf_condition(level, Presheaf(level.category(), data), f.index().label(p) + " "));
  }
}

void check_cones(const Model& m, const Options& o, Report& r) {
  if (o.object.empty()) throw PreconditionError("--object is required in cone mode");
  const auto f = m.levels();
  const FilteredBrownianSheaf w{&f, o.cone_sigma, o.kappa};
  const std::size_t samples = o.paths ? o.paths : 10000;
  const auto t = parse_rational(o.t);
  const auto tp = parse_rational(o.t_prime);
  r.params["object"] = o.object;
  r.params["t"] = to_string(t);
  r.params["t_prime"] = to_string(tp);
  r.params["kappa"] = o.kappa;
  r.params["sigma"] = o.cone_sigma;
  r.params["paths"] = samples;
  r.params["seed"] = o.seed;
  const auto rep = transversal_cone_check(w, m.category->object_index(o.object), t, tp, samples, o.seed);
  r.records.push_back(rep.record);
  r.results["containment"] = rep.containment;
  r.results["expected"] = rep.expected;
  r.results["standard_error"] = rep.standard_error;
  r.results["threshold"] = rep.threshold;
}

void simulate(const Options& o, Report& r) {
  GBMParams p{o.alpha, o.sigma, o.x0, o.horizon, o.steps ? o.steps : 100, o.seed};
  const std::size_t paths = o.paths ? o.paths : 1;
  r.params = {{"alpha", p.alpha}, {"sigma", p.sigma}, {"x0", p.x0}, {"T", p.horizon},
              {"steps", p.steps}, {"paths", paths},   {"seed", p.seed}};
  std::vector<DiscretePath> all;
  for (std::size_t i = 0; i < paths; ++i) all.push_back(simulate_gbm(p, i));
  r.results["x_T"] = all.front().back();
  const double expected = p.alpha - 0.5 * p.sigma * p.sigma;
  r.results["expected_log_drift"] = expected;
  if (paths >= 30) {
    const auto est = estimate_log_drift(all);
    r.results["log_drift"] = est.mean;
    r.results["standard_error"] = est.standard_error;
    const double tol = std::max(3.0 * est.standard_error, 1e-12);
    r.records.push_back(make_record("log-drift", std::to_string(paths) + " paths",
                                    std::abs(est.mean - expected) <= tol,
                                    "mean " + format_double(est.mean) + ", expected " + format_double(expected) +
                                        " ± " + format_double(tol)));
  }
}

void verify_ito(const Options& o, Report& r) {
  const auto f = parse_ito_function(o.function);
  const auto rule = o.rule == "pathwise"              ? ItoRule::pathwise
                    : o.rule == "quadratic-variation" ? ItoRule::quadratic_variation
                                                      : throw PreconditionError("unknown rule '" + o.rule + "'");
  const std::size_t coarse = o.steps ? o.steps : 64;
  const std::size_t paths = o.paths ? o.paths : 200;
  if (o.halvings < 1 || o.halvings > 12) throw PreconditionError("--halvings must lie in 1..12");
  const std::size_t fine = coarse << o.halvings;
  r.params = {{"function", std::string(to_string(f))}, {"rule", o.rule},   {"T", o.horizon},
              {"steps", coarse},                       {"halvings", o.halvings}, {"paths", paths},
              {"seed", o.seed}};

  std::vector<double> sum_sq(static_cast<std::size_t>(o.halvings) + 1, 0.0);
  double worst_product = 0.0;
  double worst_telescope = 0.0;
  std::size_t qv_inside = 0;
  double cross = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    const auto w = sample_brownian(o.horizon, fine, o.seed, i);
    const auto x = sample_brownian(o.horizon, fine, o.seed, paths + i);
    const auto pr = check_product_rule(w, x);
    worst_product = std::max(worst_product, pr.max_residual / std::max(pr.scale, 1.0));
    worst_telescope = std::max(worst_telescope, std::abs(telescoped_sum(w) - (w.back() - w.front())));
    const double qv = quadratic_variation(w);
    if (std::abs(qv - o.horizon) <= 3.0 * o.horizon * std::sqrt(2.0 / static_cast<double>(fine))) ++qv_inside;
    cross += std::abs(cross_variation(w));
    for (int h = 0; h <= o.halvings; ++h) {
      const auto path = coarsen(w, std::size_t{1} << (o.halvings - h));
      const double res = ito_residual(f, path, rule);
      sum_sq[static_cast<std::size_t>(h)] += res * res;
    }
  }
  r.records.push_back(make_record("product-rule", std::to_string(paths) + " path pairs", worst_product <= 1e-10,
                                  "max relative residual " + format_double(worst_product)));
  r.records.push_back(make_record("telescoping", std::to_string(paths) + " paths", worst_telescope <= 1e-12,
                                  "max deviation " + format_double(worst_telescope)));
  const double qv_fraction = static_cast<double>(qv_inside) / static_cast<double>(paths);
  r.records.push_back(make_record("quadratic-variation", std::to_string(fine) + " steps", qv_fraction >= 0.95,
                                  format_double(qv_fraction) + " of paths within 3√(2/n)"));

  json rms = json::array();
  json ratios = json::array();
  std::vector<double> rms_values;
  for (double s : sum_sq) {
    rms_values.push_back(std::sqrt(s / static_cast<double>(paths)));
    rms.push_back(rms_values.back());
  }
  bool in_band = true;
  for (std::size_t h = 1; h < rms_values.size(); ++h) {
    const double ratio = rms_values[h - 1] / rms_values[h];
    ratios.push_back(ratio);
    if (!(ratio >= 1.15 && ratio <= 1.85)) in_band = false;
  }
  r.results["rms_residual"] = rms;
  // Diagnostic only: mean |Σ Δ_i W Δ_i t| on the finest mesh.
  r.results["cross_variation"] = cross / static_cast<double>(paths);
  r.results["halving_ratios"] = ratios;
  const std::string inst = std::string(to_string(f)) + " over " + std::to_string(o.halvings) + " halvings";
  if (rms_values.back() <= 1e-12) {
    r.records.push_back(make_record("ito-exact", inst, true, "residual vanishes up to rounding"));
  } else if (rule == ItoRule::quadratic_variation) {
    r.records.push_back(make_record("ito-residual-rate", inst, in_band, "ratios " + ratios.dump() + ", band [1.15, 1.85]"));
  } else {
    r.records.push_back(CheckRecord{"ito-residual-rate", inst, Status::info, "ratios " + ratios.dump()});
  }
}

void tropicalize(const Options& o, Report& r) {
  const auto alpha = parse_rational(o.alpha_exact);
  const auto sigma = parse_rational(o.sigma_exact);
  r.params = {{"alpha", to_string(alpha)}, {"sigma", to_string(sigma)}, {"with_markers", o.with_markers}};
  const auto plain = tropicalize_log_sde(alpha, sigma);
  const auto marked = tropicalize_log_sde_with_markers(alpha, sigma);
  const auto value = o.with_markers ? marked : plain;
  r.results["value"] = to_decimal_string(value);
  r.results["exact"] = to_string(value);
  if (o.with_markers) {
    r.records.push_back(make_record("marker-shift", "max(α − σ²/2 + 1, σ + 1) − max(α − σ²/2, σ)", marked - plain == 1,
                                    "difference " + to_string(marked - plain)));
  }
}

void series(const Options& o, Report& r) {
  r.params = {{"op", o.op}, {"order", o.order}};
  TensorSeries s;
  std::size_t first = 1;
  if (o.op == "exp") {
    s = exp_series(o.order);
    first = 0;
  } else if (o.op == "log") {
    s = log_inverse_series(o.order);
  } else if (o.op == "paper-log") {
    s = paper_log_series(o.order);
  } else {
    throw PreconditionError("unknown series '" + o.op + "'");
  }
  json coeffs = json::array();
  for (const auto& c : coefficient_strings(s, first)) coeffs.push_back(c);
  r.results["first_degree"] = first;
  r.results["coefficients"] = coeffs;
  r.results["series"] = describe(s);
  if (o.op != "exp") {
    const auto round_trip = compose(s, reduced(exp_series(o.order)));
    const bool inverse = round_trip == identity_series(o.order);
    const std::string witness = "linear coefficient after composing with exp − 1 is " + to_string(round_trip[1]);
    r.records.push_back(CheckRecord{"exp-inverse", o.op + " to order " + std::to_string(o.order),
                                    inverse ? Status::pass : Status::info,
                                    inverse ? witness : witness + "; not an inverse of exp"});
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open model file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite sites, sheaves and stochastic calculus checks", "algstoch"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", o.output, "Write the report to this file");
  app.add_option("--seed", o.seed, "Random seed")->envname("ALGSTOCH_SEED");

  auto model_option = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--model", o.model, "Model file")->check(CLI::ExistingFile);
    if (required) opt->required();
  };

  auto* site = app.add_subcommand("check-site", "Build a topology and verify the Grothendieck axioms");
  model_option(site, true);
  site->add_option("--topology", o.topology)->required()->check(CLI::IsMember({"operadic", "probability", "structural"}));

  auto* roofs = app.add_subcommand("check-roofs", "Verify the roof category built on the model");
  model_option(roofs, true);

  auto* sheaf = app.add_subcommand("check-sheaf", "Gluing of a presheaf, or transversal cones of Brownian sections");
  model_option(sheaf, true);
  sheaf->add_option("--mode", o.mode)->check(CLI::IsMember({"gluing", "cones"}));
  sheaf->add_option("--topology", o.topology)->check(CLI::IsMember({"operadic", "probability", "structural"}));
  sheaf->add_option("--presheaf", o.presheaf, "Presheaf id from the model (default: constant)");
  sheaf->add_option("--object", o.object);
  sheaf->add_option("--t", o.t);
  sheaf->add_option("--t-prime", o.t_prime);
  sheaf->add_option("--kappa", o.kappa)->check(CLI::NonNegativeNumber);
  sheaf->add_option("--sigma", o.cone_sigma)->check(CLI::NonNegativeNumber);
  sheaf->add_option("--paths", o.paths);

  auto* sim = app.add_subcommand("simulate", "Exact geometric Brownian motion paths");
  sim->add_option("--alpha", o.alpha);
  sim->add_option("--sigma", o.sigma)->check(CLI::NonNegativeNumber);
  sim->add_option("--x0", o.x0);
  sim->add_option("--T", o.horizon);
  sim->add_option("--steps", o.steps);
  sim->add_option("--paths", o.paths);

  auto* ito = app.add_subcommand("verify-ito", "Product rule, quadratic variation and Itô residual convergence");
  ito->add_option("--function", o.function)->check(CLI::IsMember({"t", "w^2", "w^3", "exp(w-t/2)", "w2", "w3", "exp"}));
  ito->add_option("--rule", o.rule)->check(CLI::IsMember({"pathwise", "quadratic-variation"}));
  ito->add_option("--T", o.horizon);
  ito->add_option("--steps", o.steps, "Steps on the coarsest mesh");
  ito->add_option("--halvings", o.halvings);
  ito->add_option("--paths", o.paths);

  auto* trop = app.add_subcommand("tropicalize", "Tropical value of the log-SDE");
  trop->add_option("--alpha", o.alpha_exact);
  trop->add_option("--sigma", o.sigma_exact);
  trop->add_flag("--with-markers", o.with_markers);

  auto* ser = app.add_subcommand("series", "Exact exp/log series coefficients");
  ser->add_option("--op", o.op)->check(CLI::IsMember({"exp", "log", "paper-log"}));
  ser->add_option("--order", o.order);

  auto* fmt = app.add_subcommand("fmt", "Print the model in canonical form");
  model_option(fmt, true);
  fmt->add_flag("--in-place", o.in_place);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (fmt->parsed()) {
      const auto text = serialize_model(parse_model(read_file(o.model)));
      if (o.in_place) {
        std::ofstream(o.model, std::ios::binary) << text;
      } else {
        out << text;
      }
      return 0;
    }

    Report r;
    r.command = app.get_subcommands().front()->get_name();
    std::optional<Model> model;
    if (!o.model.empty()) {
      model = load_model(o.model);
      r.model_hash = model->hash;
    }
    if (site->parsed()) {
      check_site(*model, o, r);
    } else if (roofs->parsed()) {
      check_roofs(*model, o, r);
    } else if (sheaf->parsed()) {
      r.params["mode"] = o.mode;
      if (o.mode == "cones") {
        check_cones(*model, o, r);
      } else {
        check_gluing(*model, o, r);
      }
    } else if (sim->parsed()) {
      simulate(o, r);
    } else if (ito->parsed()) {
      verify_ito(o, r);
    } else if (trop->parsed()) {
      tropicalize(o, r);
    } else if (ser->parsed()) {
      series(o, r);
    }

    const auto text = o.format == "json" ? render_json(r) : render_text(r);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file) throw PreconditionError("cannot write report to '" + o.output + "'");
      file << text;
    }
    return r.exit_code();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace algstoch::cli
