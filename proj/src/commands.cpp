#include "seqclass/commands.hpp"

#include "json.hpp"
#include "seqclass/montecarlo.hpp"
#include "seqclass/verify.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

namespace seqclass {

namespace {

// slack for the ordering chain: the terms are solver upper bounds taken separately
constexpr double kChainSlack = 1e-6;

void check_chain(const CurveRow& r) {
  auto le = [](double a, double b) { return a <= b + kChainSlack || (std::isinf(a) && std::isinf(b)); };
  if (!le(r.e_fix, r.e_semi1) || !le(r.e_fix, r.e_semi2) || !le(r.e_semi1, r.e_seq) || !le(r.e_semi2, r.e_seq))
    throw InvariantBreach("ordering chain e_fix <= e_semi <= e_seq broken at sweep value " +
                          format_real(r.sweep_value));
}

nlohmann::ordered_json num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double setup_exponent(SetupKind s, const ExponentReport& r) {
  switch (s) {
    case SetupKind::FixedLength: return r.e_fix;
    case SetupKind::Semi1: return r.e_semi1;
    case SetupKind::Semi2: return r.e_semi2;
    case SetupKind::FullySeq: return r.e_seq;
  }
  return r.e_seq;
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << "\n";
    return kExitFloor;
  } catch (const InvariantBreach& e) {
    err << "invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace

std::vector<CurveRow> compute_curve(const RunConfig& cfg) {
  const auto xs = cfg.sweep_values();
  const SearchConfig sc = cfg.search_config();
  std::vector<CurveRow> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    const ProblemInstance inst = cfg.instance_at(x);
    rows.push_back(CurveRow::from_report(x, report(inst, sc)));
    check_chain(rows.back());
  }
  return rows;
}

std::string exponents_json(const RunConfig& cfg) {
  const ProblemInstance inst = cfg.instance();
  const SearchConfig sc = cfg.search_config();
  const ExponentReport r = report(inst, sc);
  check_chain(CurveRow::from_report(0.0, r));
  return report_json(r, inst, sc);
}

SimulationOutput compute_simulation(const RunConfig& cfg) {
  const ProblemInstance inst = cfg.instance();
  const SearchConfig sc = cfg.search_config();
  const SimSpec& sim = cfg.sim;
  if (sim.trials < 1) throw ConfigError("sim.trials must be >= 1");
  if (sim.late_phase_cap < 0) throw ConfigError("sim.late_phase_cap must be >= 0");
  if (sim.thetas.empty()) throw ConfigError("sim.thetas is empty");
  for (long n : sim.n_grid)
    if (n < 2) throw ConfigError("sim.n_grid entries must be >= 2");

  SimOptions opts;
  opts.late_phase_cap = sim.late_phase_cap;
  const ExponentReport rep = report(inst, sc);

  SimulationOutput out;
  nlohmann::ordered_json summary;
  summary["seed"] = sim.seed;
  summary["trials"] = sim.trials;
  summary["late_phase_cap"] = sim.late_phase_cap;
  summary["setups"] = nlohmann::ordered_json::array();
  for (SetupKind setup : sim.setups) {
    const auto model = make_model(setup, inst, sc);
    std::vector<TrialReport> per_n;
    for (long n : sim.n_grid) {
      TrialReport acc;
      bool first = true;
      for (int theta : sim.thetas) {
        const std::uint64_t s = hash_combine(
            hash_combine(hash_combine(sim.seed, static_cast<std::uint64_t>(setup)), static_cast<std::uint64_t>(n)),
            static_cast<std::uint64_t>(theta));
        TrialReport r = run_trials(*model, theta, n, sim.trials, s, opts);
        acc = first ? r : merge(acc, r);
        first = false;
      }
      if (acc.capped > 0)
        out.warnings.push_back(to_string(setup) + " n=" + std::to_string(n) + ": " + std::to_string(acc.capped) +
                               " trials hit the late-phase cap; exponent claims do not apply");
      per_n.push_back(acc);
      out.reports.push_back(acc);
    }
    nlohmann::ordered_json js;
    js["setup"] = to_string(setup);
    js["e1_star"] = num(setup_exponent(setup, rep));
    js["lambda_true"] = num(inst.lambda_true());
    for (int theta : sim.thetas) {
      const char* key = theta == 1 ? "type2_fit" : "type1_fit";
      try {
        const ExponentFit f = estimate_exponent(per_n, theta);
        nlohmann::ordered_json jf;
        jf["slope"] = f.slope;
        jf["intercept"] = f.intercept;
        jf["r2"] = f.r2;
        jf["n_grid"] = f.n_grid;
        js[key] = jf;
      } catch (const InsufficientData& e) {
        js[key] = nullptr;
        js[std::string(key) + "_error"] = e.what();
        // the type-II fit is what a simulate run is for
        if (theta == 1) out.floor_failure = true;
      }
    }
    long capped = 0;
    for (const auto& r : per_n) capped += r.capped;
    js["capped_trials"] = capped;
    summary["setups"].push_back(js);
  }
  out.trials_csv = trials_csv(out.reports);
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

int cmd_exponents(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << exponents_json(cfg);
    return kExitOk;
  });
}

int cmd_curve(const RunConfig& cfg, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto rows = compute_curve(cfg);
    ensure_directory(out_dir);
    const std::filesystem::path dir(out_dir);
    write_atomic((dir / "curve.csv").string(), curve_csv(rows));
    if (cfg.svg) write_atomic((dir / "curve.svg").string(), curve_svg(rows, cfg.sweep->parameter, cfg.svg_log_x));
    out << "wrote " << rows.size() << " rows to " << (dir / "curve.csv").string() << "\n";
    return kExitOk;
  });
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SimulationOutput sim = compute_simulation(cfg);
    ensure_directory(out_dir);
    const std::filesystem::path dir(out_dir);
    write_atomic((dir / "trials.csv").string(), sim.trials_csv);
    write_atomic((dir / "summary.json").string(), sim.summary_json);
    for (const auto& w : sim.warnings) err << "warning: " << w << "\n";
    out << "wrote " << sim.reports.size() << " reports to " << dir.string() << "\n";
    if (sim.floor_failure) {
      err << "error: insufficient rare-event data for the type-II exponent fit (need >= 3 n values with >= 5 "
             "errors)\n";
      return kExitFloor;
    }
    return kExitOk;
  });
}

int cmd_verify(const std::string& level, const std::vector<int>& criteria, std::ostream& out, std::ostream& err) {
  VerifyLevel lv;
  try {
    lv = level_from_string(level);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const std::vector<int> ids = criteria.empty() ? criteria_for(lv) : criteria;
  bool all = true;
  for (int id : ids) {
    CheckResult r;
    try {
      r = run_criterion(id);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = "criterion " + std::to_string(id);
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    all = all && r.passed;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1fs", r.seconds);
    out << (r.passed ? "PASS" : "FAIL") << " AC" << r.id << " " << r.name << " [" << secs << "] " << r.detail
        << std::endl;
  }
  return all ? kExitOk : kExitInvariant;
}

}  // namespace seqclass
