// entdist: entanglement and discord measures, state classification and
// entanglement-distribution experiments from the command line.

#include "entdist/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

using namespace entdist;

namespace {

enum Exit { kOk = 0, kUsage = 2, kInvalidInput = 3, kOptimizerFailure = 4 };

struct Common {
  OptimizerConfig opt;
  std::string output;
  bool timing = false;
};

void add_optimizer_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--restarts", c.opt.restarts, "Optimizer restarts")->capture_default_str();
  cmd->add_option("--max-iters", c.opt.max_iters, "Iteration cap per local search")->capture_default_str();
  cmd->add_option("--step-tol", c.opt.step_tol, "Simplex size tolerance")->capture_default_str();
  cmd->add_option("--value-tol", c.opt.value_tol, "Objective spread tolerance")->capture_default_str();
  cmd->add_option("--seed", c.opt.seed, "Random seed")->envname("ENTDIST_SEED")->capture_default_str();
  cmd->add_option("-o,--output", c.output, "Write the document here instead of stdout");
}

int factor_index(const std::string& s, int n) {
  int k = -1;
  if (s.size() == 1 && std::isupper(static_cast<unsigned char>(s[0]))) {
    k = s[0] - 'A';
  } else {
    try {
      k = std::stoi(s);
    } catch (const std::exception&) {
    }
  }
  if (k < 0 || k >= n) throw InvalidInput("factor '" + s + "' is not one of the state's " + std::to_string(n) + " factors");
  return k;
}

Cut parse_cut(const std::string& s, int n) {
  try {
    return s.empty() ? Cut::single(0, n) : Cut::parse(s, n);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
}

void emit(const Common& c, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InvalidInput("cannot write " + c.output);
  out << text;
}

Json envelope(const std::vector<std::string>& argv, const Common& c, Json result) {
  Json doc;
  doc["run"] = run_record(argv, c.opt);
  doc["result"] = std::move(result);
  return doc;
}

MeasureResult run_measure(const std::string& name, const DensityMatrix& rho, const std::string& cut_spec,
                          const std::string& measured, const OptimizerConfig& opt) {
  const int n = rho.factors();
  auto exact = [](double v, const char* method) {
    MeasureResult r;
    r.value = v;
    r.method = method;
    return r;
  };
  auto side = [&] { return factor_index(measured.empty() ? "A" : measured, n); };
  if (name == "entropy") return exact(entropy(rho), "von Neumann entropy");
  if (name == "mutual-info") return exact(mutual_information(rho, parse_cut(cut_spec, n)), "S(L) + S(R) - S(LR)");
  if (name == "log-negativity") return log_negativity(rho, parse_cut(cut_spec, n));
  if (name == "eof") return evaluate(Measure::Formation, rho, parse_cut(cut_spec, n), opt);
  if (name == "rel-ent-entanglement") return rel_entropy_entanglement(rho, parse_cut(cut_spec, n), opt);
  if (name == "geometric-entanglement") return geometric_entanglement(rho, parse_cut(cut_spec, n), opt);
  if (name == "rel-ent-discord") return rel_entropy_discord(rho, side(), opt);
  if (name == "geometric-discord") return geometric_discord_hs(rho, side(), opt);
  if (name == "discord") return discord_mutual_info(rho, side(), opt);
  if (name == "classical-correlations") return classical_correlations(rho, side(), opt);
  throw CLI::ValidationError("--measure", "unknown measure " + name);
}

DensityMatrix fixture(const std::string& name) {
  const CVector k0 = basis_ket(2, 0), plus = CVector::Constant(2, 1.0 / std::sqrt(2.0));
  if (name == "phi_plus_d2") return max_entangled(2).density();
  if (name == "phi_plus_d3") return max_entangled(3).density();
  if (name == "ghz") return ghz().density();
  if (name == "eta") return cubitt_eta();
  if (name == "cc_bit") {
    Eigen::MatrixXd p = Eigen::MatrixXd::Identity(2, 2) / 2.0;
    return make_cc(p, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
  }
  if (name == "cq_nonorth") {
    // |0><0| ⊗ |0><0| and |1><1| ⊗ |+><+| with equal weight.
    const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(2, 2) / 2.0;
    return make_cq(p, CMatrix::Identity(2, 2), {k0, plus});
  }
  if (name == "sep_mix") {
    return make_separable({{0.5, {k0, k0}}, {0.5, {plus, plus}}});
  }
  if (name == "phi_plus_ac_b0") {
    // φ⁺ shared by A and C, B in |0>; factors ordered A, B, C.
    CVector v = CVector::Zero(8);
    v(0b000) = v(0b101) = 1.0 / std::sqrt(2.0);
    return PureState(v, {2, 2, 2}).density();
  }
  throw InvalidInput("unknown fixture '" + name + "'");
}

const std::vector<std::string> kFixtures{"phi_plus_d2", "phi_plus_d3", "ghz",    "eta",
                                         "cc_bit",      "cq_nonorth",  "sep_mix", "phi_plus_ac_b0"};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Entanglement and discord measures, state classification and entanglement distribution"};
  app.set_version_flag("--version", ENTDIST_VERSION);
  app.require_subcommand(1);
  Common c;

  const std::vector<std::string> measure_names{"entropy", "mutual-info", "log-negativity", "eof",
                                               "rel-ent-entanglement", "geometric-entanglement",
                                               "rel-ent-discord", "geometric-discord", "discord",
                                               "classical-correlations"};
  const std::vector<std::string> ent_measures{"E_n", "E_f", "E_r", "E_g"};

  std::string state_path, channel_path, measure, cut_spec, measured, experiment, table_path, fixture_name;
  double tol = 1e-6, ppt_tol = 1e-10, guard = 1e-9;
  int samples = 100, threads = 1;

  auto* cmd_measure = app.add_subcommand("measure", "Compute one measure on a state file");
  cmd_measure->add_option("state", state_path, "State file")->required();
  cmd_measure->add_option("--measure", measure, "Measure name")->required()->check(CLI::IsMember(measure_names));
  cmd_measure->add_option("--cut", cut_spec, "Bipartition such as AC|B (default: A against the rest)");
  cmd_measure->add_option("--measured", measured, "Measured factor for discord measures (letter or index)");
  add_optimizer_flags(cmd_measure, c);

  auto* cmd_classify = app.add_subcommand("classify", "PPT, zero-discord and classical-correlation tests");
  cmd_classify->add_option("state", state_path, "State file")->required();
  cmd_classify->add_option("--tol", tol, "Zero-discord and classical-correlation threshold")->capture_default_str();
  cmd_classify->add_option("--ppt-tol", ppt_tol, "Partial-transpose eigenvalue tolerance")->capture_default_str();
  add_optimizer_flags(cmd_classify, c);

  auto* cmd_dist = app.add_subcommand("distribute", "Indirect distribution of a tripartite state through a channel on C");
  cmd_dist->add_option("state", state_path, "State file (factors A, B, C)")->required();
  cmd_dist->add_option("channel", channel_path, "Channel file")->required();
  measure = "E_n";
  cmd_dist->add_option("--measure", measure, "Entanglement measure")->check(CLI::IsMember(ent_measures))->capture_default_str();
  cmd_dist->add_option("--guard", guard, "Margin for the excessive verdict")->capture_default_str();
  add_optimizer_flags(cmd_dist, c);

  auto* cmd_bound = app.add_subcommand("bound", "Discord bounds on distributed entanglement");
  cmd_bound->add_option("state", state_path, "State file (factors A, B, C)")->required();
  cmd_bound->add_option("--channel", channel_path, "Channel on C for the noisy bound");
  add_optimizer_flags(cmd_bound, c);

  auto* cmd_sweep = app.add_subcommand("sweep", "Seeded property sweep; one JSON record per line");
  cmd_sweep->add_option("--experiment", experiment, "Experiment")->required()->check(CLI::IsMember(experiment_names()));
  cmd_sweep->add_option("--samples", samples, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--threads", threads, "Worker threads (output does not depend on it)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd_sweep->add_option("--table", table_path, "Also write a tab-separated table for plotting");
  add_optimizer_flags(cmd_sweep, c);

  auto* cmd_eta = app.add_subcommand("demo-eta", "Three-cut report, discord-bound saturation and verdict for eta");
  add_optimizer_flags(cmd_eta, c);

  auto* cmd_fixture = app.add_subcommand("fixture", "Write a named state fixture");
  cmd_fixture->add_option("name", fixture_name, "Fixture name")->required()->check(CLI::IsMember(kFixtures));
  cmd_fixture->add_option("-o,--output", c.output, "Output file");

  for (auto* sub : {cmd_measure, cmd_classify, cmd_dist, cmd_bound, cmd_sweep, cmd_eta}) {
    sub->add_flag("--timing", c.timing, "Report wall time on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.opt.validate();
    if (*cmd_measure) {
      const DensityMatrix rho = read_state(state_path);
      Json res = to_json(run_measure(measure, rho, cut_spec, measured, c.opt));
      res["measure"] = measure;
      if (!cut_spec.empty()) res["cut"] = cut_spec;
      if (!measured.empty()) res["measured"] = measured;
      emit(c, envelope(args, c, std::move(res)));
    } else if (*cmd_classify) {
      emit(c, envelope(args, c, to_json(classify(read_state(state_path), c.opt, tol, ppt_tol))));
    } else if (*cmd_dist) {
      const DensityMatrix rho = read_state(state_path);
      if (rho.factors() != 3) throw InvalidInput("distribute needs a state with factors A, B, C");
      const KrausChannel ch = read_channel(channel_path);
      const Measure m = parse_measure(measure);
      const DistributionOutcome o = indirect_gain(rho, ch, m, c.opt);
      Json res = to_json(o);
      if (o.carrier) {
        const double g = guard + o.before.achieved_tol + o.after.achieved_tol + o.carrier->achieved_tol;
        res["verdict"] = o.gain > o.carrier->value + g ? "excessive" : "nonexcessive";
        res["guard"] = g;
      }
      emit(c, envelope(args, c, std::move(res)));
    } else if (*cmd_bound) {
      const DensityMatrix rho = read_state(state_path);
      if (rho.factors() != 3) throw InvalidInput("bound needs a state with factors A, B, C");
      Json res;
      res["discord_bound"] = to_json(check_discord_bound(rho, c.opt));
      res["sandwich"] = to_json(check_sandwich(rho, c.opt));
      if (!channel_path.empty()) res["noisy_bound"] = to_json(check_noisy_bound(rho, read_channel(channel_path), c.opt));
      emit(c, envelope(args, c, std::move(res)));
    } else if (*cmd_sweep) {
      SweepConfig sc{experiment, samples, c.opt.seed, c.opt, threads};
      const SweepOutput out = run_sweep(sc);
      std::ostringstream os;
      Json header;
      header["run"] = run_record(args, c.opt);
      os << header.dump() << '\n';
      for (const auto& r : out.records) os << r.dump() << '\n';
      Json summary;
      summary["summary"] = out.summary;
      os << summary.dump() << '\n';
      if (c.output.empty()) {
        std::cout << os.str();
      } else {
        std::ofstream f(c.output);
        if (!f) throw InvalidInput("cannot write " + c.output);
        f << os.str();
      }
      if (!table_path.empty()) {
        std::ofstream f(table_path);
        if (!f) throw InvalidInput("cannot write " + table_path);
        f << to_tsv(out);
      }
    } else if (*cmd_eta) {
      const DensityMatrix eta = cubitt_eta();
      Json res;
      Json en = Json::object();
      for (const char* cut : {"A|BC", "AC|B", "AB|C"}) en[cut] = to_json(log_negativity(eta, Cut::parse(cut, 3)));
      res["log_negativity"] = std::move(en);
      const BoundReport b = check_discord_bound(eta, c.opt);
      res["discord_bound"] = to_json(b);
      res["saturation_gap"] = std::abs(b.lhs - b.rhs);
      res["protocol"] = to_json(classify_protocol(eta, Measure::LogNegativity, c.opt));
      emit(c, envelope(args, c, std::move(res)));
    } else if (*cmd_fixture) {
      emit(c, state_to_json(fixture(fixture_name)));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "entdist: " << e.what() << '\n';
    return kUsage;
  } catch (const OptimizationFailure& e) {
    std::cerr << "entdist: optimizer failure: " << e.what() << '\n';
    return kOptimizerFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "entdist: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "entdist: " << e.what() << '\n';
    return kOptimizerFailure;
  }
  if (c.timing) {
    std::cerr << "wall time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
  }
  return kOk;
}
