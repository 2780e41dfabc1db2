// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is non-zero when any criterion fails.

#include "algstoch/cli.hpp"
#include "algstoch/model.hpp"
#include "algstoch/roof_category.hpp"
#include "algstoch/sheaves.hpp"
#include "algstoch/sites.hpp"
#include "algstoch/stochastic.hpp"
#include "algstoch/tropical.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace algstoch;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const std::vector<std::string> passing{"minimal", "four_events", "six_events", "chain", "square", "partition"};

std::string fixture(const std::string& name) { return std::string(ALGSTOCH_FIXTURE_DIR) + "/" + name + ".json"; }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool named_failure(const CheckList& records, const std::string& check, const std::string& instance) {
  for (const auto& r : failures(records)) {
    if (r.check == check && r.instance.find(instance) != std::string::npos) return true;
  }
  return false;
}

Outcome product_rule() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto x = sample_brownian(1.0, 1000, 101, 2 * i);
    const auto y = sample_brownian(1.0, 1000, 101, 2 * i + 1);
    const auto r = check_product_rule(x, y);
    worst = std::max(worst, r.max_residual / r.scale);
  }
  return {worst <= 1e-10, "max residual / scale = " + fmt(worst)};
}

Outcome quadratic_variation_check() {
  const std::size_t n = 100000;
  const std::size_t paths = 200;
  std::size_t inside = 0;
  double ms_fine = 0.0;
  double ms_coarse = 0.0;
  for (std::uint64_t p = 0; p < paths; ++p) {
    const auto w = sample_brownian(1.0, n, 202, p);
    const double fine = quadratic_variation(w) - 1.0;
    const double coarse = quadratic_variation(coarsen(w, 2)) - 1.0;
    inside += std::abs(fine) <= 3.0 * std::sqrt(2.0 / static_cast<double>(n));
    ms_fine += fine * fine;
    ms_coarse += coarse * coarse;
  }
  const double fraction = static_cast<double>(inside) / static_cast<double>(paths);
  const double rms_ratio = std::sqrt(ms_coarse / ms_fine);
  const bool halving = rms_ratio >= 2.0 / 1.5 && rms_ratio <= 2.0 * 1.5;
  return {fraction >= 0.95 && halving, "within 3√(2/n): " + fmt(fraction) + ", RMS ratio per halving " +
                                           fmt(rms_ratio) + " (band [1.333, 3]), mean-square ratio " +
                                           fmt(ms_coarse / ms_fine)};
}

Outcome log_drift() {
  GBMParams p{0.1, 0.2, 1.0, 1.0, 100, 303};
  std::vector<DiscretePath> paths;
  paths.reserve(10000);
  for (std::uint64_t i = 0; i < 10000; ++i) paths.push_back(simulate_gbm(p, i));
  const auto e = estimate_log_drift(paths);
  return {std::abs(e.mean - 0.08) <= 0.006,
          "mean " + fmt(e.mean) + ", 3 standard errors " + fmt(3.0 * e.standard_error)};
}

Outcome ito_rate() {
  const int halvings = 4;
  const std::size_t coarse = 1000;
  const std::size_t paths = 200;
  std::vector<double> ms(halvings + 1, 0.0);
  for (std::uint64_t p = 0; p < paths; ++p) {
    const auto w = sample_brownian(1.0, coarse << halvings, 404, p);
    for (int h = 0; h <= halvings; ++h) {
      const double r = ito_residual(ItoFunction::w3, coarsen(w, std::size_t{1} << (halvings - h)),
                                    ItoRule::quadratic_variation);
      ms[static_cast<std::size_t>(h)] += r * r;
    }
  }
  bool ok = true;
  std::string ratios;
  for (int h = 1; h <= halvings; ++h) {
    const double ratio = std::sqrt(ms[static_cast<std::size_t>(h - 1)] / ms[static_cast<std::size_t>(h)]);
    ok = ok && ratio >= 1.15 && ratio <= 1.85;
    ratios += (h > 1 ? ", " : "") + fmt(ratio);
  }
  return {ok, "RMS ratios per halving [" + ratios + "]"};
}

Outcome tropical() {
  const bool value = tropicalize_log_sde(parse_rational("0.1"), parse_rational("0.2")) == parse_rational("0.2");
  const bool markers = tropicalize_log_sde_with_markers(parse_rational("0.1"), parse_rational("0.2")) -
                           tropicalize_log_sde(parse_rational("0.1"), parse_rational("0.2")) ==
                       1;
  std::mt19937_64 rng(505);
  auto rational = [&] { return Rational(static_cast<long>(rng() % 20001) - 10000, static_cast<long>(rng() % 999) + 1); };
  bool shift = true;
  for (int i = 0; i < 1000; ++i) {
    const auto a = GradedExpr::from_coefficients({rational(), rational(), rational()});
    const auto b = GradedExpr::from_coefficients({rational(), rational()});
    const auto c = rational();
    shift = shift && trop_max(a + GradedExpr::constant(c), b + GradedExpr::constant(c)) == trop_max(a, b) + c;
  }
  return {value && markers && shift, std::string("value 0.2: ") + (value ? "yes" : "no") +
                                         ", marker shift 1: " + (markers ? "yes" : "no") +
                                         ", shift invariance on 1000 triples: " + (shift ? "yes" : "no")};
}

Outcome series() {
  const auto round_trip = compose(log_inverse_series(6), reduced(exp_series(6)));
  const bool inverse = round_trip == identity_series(6);
  const auto paper = compose(paper_log_series(6), reduced(exp_series(6)));
  const bool flagged = paper[1] == -1 && !(paper == identity_series(6));
  return {inverse && flagged, "reversion is identity to order 6: " + std::string(inverse ? "yes" : "no") +
                                  ", literal series order-1 coefficient " + to_string(paper[1])};
}

Outcome topologies() {
  std::size_t records = 0;
  bool ok = true;
  for (const auto& name : passing) {
    const auto m = load_model(fixture(name));
    auto check = [&](const CheckList& r) {
      records += r.size();
      ok = ok && all_pass(r);
    };
    check(verify_grothendieck(build_tau_structural(*m.category)));
    const auto levels = m.levels();
    check(verify_grothendieck(build_tau_operadic(levels)));
    check(verify_grothendieck(build_tau_P(levels, *m.measure)));
  }
  const auto missing = load_model(fixture("defect_missing_pullback"));
  const bool planted1 = named_failure(verify_grothendieck(build_tau_structural(*missing.category)), "base-change",
                                      "(A, Ac) over Omega");
  const auto gap = load_model(fixture("defect_operad_gap"));
  const bool planted2 =
      named_failure(verify_grothendieck(build_tau_operadic(*gap.filtration)), "base-change", "(Ac, A) over Omega");
  return {ok && planted1 && planted2, std::to_string(passing.size()) + " fixtures, " + std::to_string(records) +
                                          " records; planted defects named: " +
                                          (planted1 && planted2 ? "yes" : "no")};
}

Outcome roofs() {
  std::size_t pairs = 0;
  std::size_t functorial = 0;
  bool ok = true;
  for (const auto& name : passing) {
    const auto m = load_model(fixture(name));
    const auto records = verify_roof_category(RoofCategory(*m.category));
    ok = ok && all_pass(records);
    for (const auto& r : records) functorial += r.check == "roof-functoriality" && r.status == Status::pass;
    const auto& cat = *m.category;
    for (std::size_t f = 0; f < cat.morphism_count(); ++f) {
      for (std::size_t g = 0; g < cat.morphism_count(); ++g) pairs += cat.morphism(f).target == cat.morphism(g).source;
    }
  }
  return {ok && functorial == pairs,
          std::to_string(functorial) + " of " + std::to_string(pairs) + " composable pairs functorial"};
}

Outcome gluing() {
  bool ok = true;
  std::size_t covers = 0;
  for (const auto& name : passing) {
    const auto m = load_model(fixture(name));
    auto check = [&](const GrothendieckSite& site) {
      const auto r = check_sheaf_condition(site, Presheaf::constant(site.category(), {Value{0.0}}));
      covers += r.size();
      ok = ok && all_pass(r);
    };
    check(build_tau_structural(*m.category));
    const auto levels = m.levels();
    for (const auto& level : build_tau_operadic(levels).levels) check(level);
    for (const auto& level : build_tau_P(levels, *m.measure).levels) check(level);
  }
  const auto bad = load_model(fixture("defect_nongluing"));
  const auto r = check_sheaf_condition(build_tau_structural(*bad.category),
                                       Presheaf(*bad.category, bad.presheaf("doubled")));
  const bool named = named_failure(r, "gluing", "cover of Omega by {i_A_Omega}");
  return {ok && named, std::to_string(covers) + " covering families glue; planted presheaf fails on its cover: " +
                           (named ? "yes" : "no")};
}

Outcome cones() {
  const auto m = load_model(fixture("six_events"));
  const FilteredBrownianSheaf w{&*m.filtration, 1.0, 3.0};
  const auto r =
      transversal_cone_check(w, m.category->object_index("Triangle"), Rational(0), Rational(1), 10000, 606);
  const bool within = std::abs(r.containment - r.expected) <= 3.0 * r.standard_error;
  return {within, "containment " + fmt(r.containment) + ", 2Φ(3)−1 = " + fmt(r.expected) + ", 3 se = " +
                      fmt(3.0 * r.standard_error)};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"check-site", "--model", fixture("six_events"), "--topology", "probability", "--format", "json"},
      {"check-site", "--model", fixture("partition"), "--topology", "operadic"},
      {"check-roofs", "--model", fixture("six_events")},
      {"check-sheaf", "--model", fixture("six_events")},
      {"check-sheaf", "--model", fixture("six_events"), "--mode", "cones", "--object", "Triangle", "--seed", "11"},
      {"simulate", "--paths", "100", "--seed", "12", "--format", "json"},
      {"verify-ito", "--seed", "13"},
      {"tropicalize", "--alpha", "0.1", "--sigma", "0.2", "--with-markers"},
      {"series", "--op", "paper-log", "--order", "6", "--format", "json"},
  };
  std::size_t identical = 0;
  for (auto args : commands) {
    args.insert(args.begin(), "algstoch");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::string first;
    bool same = true;
    for (int rep = 0; rep < 2; ++rep) {
      std::ostringstream out;
      std::ostringstream err;
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      if (rep == 0) {
        first = out.str();
      } else {
        same = !first.empty() && first == out.str();
      }
    }
    identical += same;
  }
  return {identical == commands.size(),
          std::to_string(identical) + " of " + std::to_string(commands.size()) + " commands byte-identical"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double seconds_limit;
  };
  const std::vector<Criterion> criteria{
      {"product-rule exactness", product_rule, 5.0},
      {"quadratic variation", quadratic_variation_check, 30.0},
      {"log-drift", log_drift, 30.0},
      {"Itô residual rate", ito_rate, 0.0},
      {"tropical reproduction", tropical, 0.0},
      {"series check", series, 0.0},
      {"topology axioms", topologies, 5.0},
      {"roof category axioms", roofs, 0.0},
      {"sheaf gluing", gluing, 0.0},
      {"transversal cones", cones, 0.0},
      {"determinism", determinism, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(secs) + " s";
    if (criteria[i].seconds_limit > 0.0) {
      timing += " of " + fmt(criteria[i].seconds_limit) + " s";
      if (secs >= criteria[i].seconds_limit) o.pass = false;
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].name << ": " << o.detail << " ["
              << timing << "]\n";
  }
  return failed == 0 ? 0 : 1;
}
