// SPDX-License-Identifier: Apache-2.0
// pcbplace: generate boards, train placers, evaluate, compare and render.
//
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime abort.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcbplace/agents.hpp"
#include "pcbplace/generator.hpp"
#include "pcbplace/instance_io.hpp"
#include "pcbplace/losses.hpp"
#include "pcbplace/render.hpp"

namespace fs = std::filesystem;
using namespace pcbplace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

constexpr std::uint64_t kDefaultSeed = 1;
constexpr double kGradCheckThreshold = 1e-4;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Training options shared by `train` and `compare`. Optional fields are only
// applied when given, so they override the config file.
struct TrainFlags {
  std::string config_path;
  std::optional<double> alpha, gamma, lr;
  std::optional<std::size_t> k, minibatch, iterations, episodes, horizon, target_period;
  std::optional<std::uint64_t> seed;
  std::string hidden;
  std::optional<std::size_t> sa_iterations;
  std::optional<double> sa_cooling, sa_temperature;
  bool sa_classical = false;

  void add_to(CLI::App &cmd) {
    cmd.add_option("--config", config_path, "JSON config file (flags override it)");
    cmd.add_option("--alpha", alpha, "Non-overlap reward weight in [0,1]");
    cmd.add_option("--k", k, "Top-K size (0 = ceil(actions / nets))");
    cmd.add_option("--gamma", gamma, "Discount factor");
    cmd.add_option("--lr", lr, "Adam learning rate");
    cmd.add_option("--minibatch", minibatch, "Sliding-window minibatch size");
    cmd.add_option("--iterations", iterations, "Training iterations (environment steps)");
    cmd.add_option("--episodes", episodes, "Episode cap (0 = none)");
    cmd.add_option("--epsilon-horizon", horizon, "Iterations over which epsilon decays");
    cmd.add_option("--target-period", target_period, "Hard target-network update period");
    cmd.add_option("--hidden", hidden, "Hidden widths, e.g. 128,64,64");
    cmd.add_option("--sa-iterations", sa_iterations, "Simulated annealing iterations");
    cmd.add_option("--sa-cooling", sa_cooling, "Simulated annealing cooling rate");
    cmd.add_option("--sa-temperature", sa_temperature, "Initial SA temperature (default: mean slot distance)");
    cmd.add_flag("--sa-classical", sa_classical, "Accept against the current solution instead of the best");
  }
};

std::vector<std::size_t> parse_widths(const std::string &text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) {
      try {
        out.push_back(std::stoul(item));
      } catch (const std::exception &) {
        throw UsageError("bad hidden width '" + item + "'");
      }
    }
  return out;
}

void apply_config_file(const std::string &path, TrainConfig &train, SaConfig &sa) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception &e) {
    throw MalformedFileError("malformed config '" + path + "': " + e.what());
  }
  if (!j.is_object())
    throw MalformedFileError("malformed config '" + path + "': top level must be an object");
  try {
    auto get = [&](const char *key, auto &field) {
      if (j.contains(key))
        field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("gamma", train.gamma);
    get("lr", train.adam.lr);
    get("beta1", train.adam.beta1);
    get("beta2", train.adam.beta2);
    get("minibatch", train.minibatch);
    get("epsilon_start", train.epsilon_start);
    get("epsilon_end", train.epsilon_end);
    get("epsilon_horizon", train.epsilon_horizon);
    get("target_update_period", train.target_update_period);
    get("alpha", train.reward.alpha);
    get("k", train.reward.k);
    get("seed", train.seed);
    get("max_iterations", train.max_iterations);
    get("max_episodes", train.max_episodes);
    get("hidden", train.hidden);
    get("eval_every", train.eval_every);
    get("sa_cooling_rate", sa.cooling_rate);
    get("sa_iterations", sa.iterations);
    if (j.contains("sa_initial_temperature"))
      sa.initial_temperature = j.at("sa_initial_temperature").get<double>();
    if (j.contains("sa_acceptance")) {
      const auto mode = j.at("sa_acceptance").get<std::string>();
      if (mode != "best" && mode != "current")
        throw MalformedFileError("malformed config: sa_acceptance must be \"best\" or \"current\"");
      sa.acceptance = mode == "best" ? SaAcceptance::AgainstBest : SaAcceptance::AgainstCurrent;
    }
  } catch (const nlohmann::json::exception &e) {
    throw MalformedFileError("malformed config '" + path + "': " + e.what());
  }
  sa.seed = train.seed;
}

void resolve(const TrainFlags &f, TrainConfig &train, SaConfig &sa) {
  train.seed = kDefaultSeed;
  if (!f.config_path.empty())
    apply_config_file(f.config_path, train, sa);
  if (f.alpha) train.reward.alpha = *f.alpha;
  if (f.k) train.reward.k = *f.k;
  if (f.gamma) train.gamma = *f.gamma;
  if (f.lr) train.adam.lr = *f.lr;
  if (f.minibatch) train.minibatch = *f.minibatch;
  if (f.iterations) train.max_iterations = *f.iterations;
  if (f.episodes) train.max_episodes = *f.episodes;
  if (f.horizon) train.epsilon_horizon = *f.horizon;
  if (f.target_period) train.target_update_period = *f.target_period;
  if (f.seed) train.seed = *f.seed;
  if (!f.hidden.empty()) train.hidden = parse_widths(f.hidden);
  if (f.sa_iterations) sa.iterations = *f.sa_iterations;
  if (f.sa_cooling) sa.cooling_rate = *f.sa_cooling;
  if (f.sa_temperature) sa.initial_temperature = *f.sa_temperature;
  if (f.sa_classical) sa.acceptance = SaAcceptance::AgainstCurrent;
  sa.seed = train.seed;
  validate(train);
  validate(sa);
}

const std::vector<std::string> kMethods{"sa", "dqn", "dqnnet", "a2c"};

TrainResult run_method(const PcbInstance &instance, const std::string &method, TrainConfig train, SaConfig sa) {
  if (method == "sa")
    return run_sa(instance, sa);
  if (method == "dqn") {
    train.mode = EncodingMode::PassiveOnly;
    return train_dqn(instance, train);
  }
  if (method == "dqnnet") {
    train.mode = EncodingMode::PassiveNet;
    return train_dqn(instance, train);
  }
  if (method == "a2c") {
    train.mode = EncodingMode::PassiveOnly;
    return train_a2c(instance, train);
  }
  throw UsageError("unknown method '" + method + "' (expected sa, dqn, dqnnet or a2c)");
}

std::string curves_csv(const TrainResult &r) {
  std::ostringstream out;
  char buf[160];
  if (r.method == "sa") {
    out << "iteration,temperature,current_tewl,best_tewl\n";
    for (const auto &p : r.sa_trace) {
      std::snprintf(buf, sizeof buf, "%zu,%.9g,%.6f,%.6f\n", p.iteration, p.temperature, p.current_tewl, p.best_tewl);
      out << buf;
    }
  } else {
    out << "iteration,epsilon,loss,episode_reward,greedy_tewl\n";
    for (const auto &p : r.curve) {
      std::snprintf(buf, sizeof buf, "%zu,%.6f,%.9g,%.6f,", p.iteration, p.epsilon, p.loss, p.episode_reward);
      out << buf;
      if (!std::isnan(p.greedy_tewl)) {
        std::snprintf(buf, sizeof buf, "%.6f", p.greedy_tewl);
        out << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string partial_curve_csv(const std::vector<CurvePoint> &curve, const std::string &method) {
  TrainResult tmp;
  tmp.method = method;
  tmp.curve = curve;
  return curves_csv(tmp);
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string like;
  std::optional<std::size_t> passives, nets, actions;
  std::optional<double> disparity, board, max_dim;
  std::uint64_t seed = kDefaultSeed;
  std::string name;
  bool no_ground = false;
  std::string out = ".";
};

int cmd_generate(const GenerateArgs &a) {
  GeneratorSpec spec;
  if (!a.like.empty()) {
    const auto preset = preset_spec(a.like);
    if (!preset) {
      std::string names;
      for (const auto &n : preset_names())
        names += " " + n;
      throw UsageError("unknown preset '" + a.like + "'; choose one of:" + names);
    }
    spec = *preset;
  }
  if (a.passives) spec.passives = *a.passives;
  if (a.nets) spec.nets = *a.nets;
  if (a.actions) spec.actions = *a.actions;
  if (a.disparity) spec.disparity = *a.disparity;
  if (a.board) spec.board_size = *a.board;
  if (a.max_dim) spec.max_dim = *a.max_dim;
  if (!a.name.empty()) spec.name = a.name;
  spec.seed = a.seed;
  spec.with_ground = !a.no_ground;
  const PcbInstance instance = generate_synthetic(spec);
  const fs::path path = fs::path(a.out) / (instance.name() + ".pcb");
  save_instance(instance, path);
  std::cout << path.string() << '\n';
  return kExitOk;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string instance;
  std::string method = "dqn";
  std::string out = ".";
  std::string export_gamma;
  TrainFlags flags;
};

int cmd_train(const TrainArgs &a) {
  const PcbInstance instance = load_instance(a.instance);
  TrainConfig train;
  SaConfig sa;
  resolve(a.flags, train, sa);
  if (!a.export_gamma.empty())
    write_text_file(a.export_gamma, build_gamma(instance, train.reward).to_text());

  const fs::path dir(a.out);
  const std::string stem = instance.name() + "_" + a.method;
  TrainResult result;
  try {
    result = run_method(instance, a.method, train, sa);
  } catch (const TrainingAborted &e) {
    write_text_file(dir / "curves.csv", partial_curve_csv(e.partial_curve, a.method));
    throw;
  }
  write_text_file(dir / "curves.csv", curves_csv(result));
  if (result.q_network)
    save_checkpoint(*result.q_network, dir / (stem + ".ckpt"));
  if (result.actor)
    save_checkpoint(*result.actor, dir / (stem + "_actor.ckpt"));
  save_placement(make_placement_record(instance, result.placement), dir / (stem + ".place"));
  const std::string row = metrics_csv_row(instance.name(), a.method, result.metrics, result.seconds);
  write_text_file(dir / "report.csv", metrics_csv_header() + "\n" + row + "\n");
  std::cout << metrics_csv_header() << '\n' << row << '\n';
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

int cmd_eval(const std::string &instance_path, const std::string &placement_path, const std::string &out) {
  const PcbInstance instance = load_instance(instance_path);
  const PlacementRecord record = load_placement(placement_path);
  const MetricsReport metrics = evaluate_metrics(instance, record.placement);
  std::printf("tewl %.6f\noverlap_pairs %zu\ncrossing_count %zu\n", metrics.tewl, metrics.overlap_pairs,
              metrics.crossing_count);
  const std::string row = metrics_csv_row(instance.name(), "eval", metrics, 0.0);
  std::cout << metrics_csv_header() << '\n' << row << '\n';
  if (!out.empty())
    write_text_file(fs::path(out) / "report.csv", metrics_csv_header() + "\n" + row + "\n");
  return kExitOk;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::vector<std::string> instances;
  std::vector<std::string> methods{"sa", "dqn", "dqnnet", "a2c"};
  std::vector<std::uint64_t> seeds{kDefaultSeed};
  bool oracle = false;
  std::size_t jobs = 0;
  std::string out = ".";
  TrainFlags flags;
};

int cmd_compare(const CompareArgs &a) {
  for (const auto &m : a.methods)
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
      throw UsageError("unknown method '" + m + "'");
  if (a.seeds.empty())
    throw UsageError("need at least one seed");
  TrainConfig base_train;
  SaConfig base_sa;
  resolve(a.flags, base_train, base_sa);

  std::vector<PcbInstance> instances;
  for (const auto &path : a.instances)
    instances.push_back(load_instance(path));

  struct Cell {
    std::size_t instance;
    std::size_t method;
    std::uint64_t seed;
    std::optional<TrainResult> result;
    std::string error;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t m = 0; m < a.methods.size(); ++m)
      for (const std::uint64_t seed : a.seeds)
        cells.push_back({i, m, seed, std::nullopt, {}});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++) {
      Cell &cell = cells[c];
      TrainConfig train = base_train;
      SaConfig sa = base_sa;
      train.seed = cell.seed;
      sa.seed = cell.seed;
      try {
        cell.result = run_method(instances[cell.instance], a.methods[cell.method], train, sa);
      } catch (const std::exception &e) {
        cell.error = e.what();
      }
    }
  };
  const std::size_t jobs =
      std::max<std::size_t>(1, std::min(cells.size(), a.jobs ? a.jobs : std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j + 1 < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();

  const fs::path dir(a.out);
  std::vector<ReportEntry> entries;
  bool any_failed = false;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const PcbInstance &inst = instances[i];
    for (std::size_t m = 0; m < a.methods.size(); ++m) {
      const TrainResult *best = nullptr;
      std::string errors;
      for (const Cell &cell : cells) {
        if (cell.instance != i || cell.method != m)
          continue;
        if (!cell.result) {
          any_failed = true;
          errors += (errors.empty() ? "" : "; ") + ("seed " + std::to_string(cell.seed) + ": " + cell.error);
        } else if (!best || cell.result->metrics.tewl < best->metrics.tewl) {
          best = &*cell.result;
        }
      }
      ReportEntry entry{inst.name(), a.methods[m], std::nullopt, inst.gt_tewl(), 0.0, errors};
      if (best) {
        entry.metrics = best->metrics;
        entry.seconds = best->seconds;
        write_text_file(dir / (inst.name() + "_" + a.methods[m] + ".svg"), render_svg(inst, &best->placement));
      }
      entries.push_back(std::move(entry));
    }
    if (a.oracle) {
      try {
        const OracleResult o = brute_force_oracle(inst, OracleObjective::Tewl);
        const Placement placement = Placement::from_slots(o.assignment);
        entries.push_back({inst.name(), "oracle", evaluate_metrics(inst, placement), inst.gt_tewl(), 0.0, {}});
        write_text_file(dir / (inst.name() + "_oracle.svg"), render_svg(inst, &placement));
      } catch (const OracleScaleError &) {
        std::cerr << "note: " << inst.name() << " is too large for the oracle; skipped\n";
      }
    }
  }

  const Report report = emit_report(entries);
  write_text_file(dir / "report.csv", report.csv);
  write_text_file(dir / "report.txt", report.table);
  std::cout << report.table;
  if (any_failed) {
    std::cerr << "error: one or more cells failed; see report.csv\n";
    return kExitRuntime;
  }
  return kExitOk;
}

// ---- render / gradcheck ----------------------------------------------------

int cmd_render(const std::string &instance_path, const std::string &placement_path, const std::string &out,
               double scale, bool no_labels) {
  const PcbInstance instance = load_instance(instance_path);
  RenderStyle style;
  style.scale = scale;
  style.labels = !no_labels;
  std::optional<Placement> placement;
  if (!placement_path.empty())
    placement = load_placement(placement_path).placement;
  const std::string svg = render_svg(instance, placement ? &*placement : nullptr, style);
  if (out.empty())
    std::cout << svg;
  else
    write_text_file(out, svg);
  return kExitOk;
}

int cmd_gradcheck(std::uint64_t seed, bool corrupt) {
  bool ok = true;
  for (const GradCheckReport &r : {gradcheck_dqn(seed, corrupt), gradcheck_ac(seed, corrupt)}) {
    const bool pass = r.max_relative_error < kGradCheckThreshold;
    ok = ok && pass;
    std::printf("%-8s max_relative_error=%.3e %s\n", r.name.c_str(), r.max_relative_error, pass ? "PASS" : "FAIL");
  }
  return ok ? kExitOk : kExitRuntime;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Component-centric PCB passive placement"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *generate = app.add_subcommand("generate", "Write a synthetic instance file");
  generate->add_option("--like", gen.like, "Board-shape preset (u4, u3, u25, u47, u24, u115, vr3, u20, u26)");
  generate->add_option("--passives", gen.passives, "Number of passives");
  generate->add_option("--nets", gen.nets, "Number of signal nets");
  generate->add_option("--actions", gen.actions, "Number of candidate slots");
  generate->add_option("--disparity", gen.disparity, "Smallest/largest passive dimension ratio");
  generate->add_option("--board", gen.board, "Board side in mm");
  generate->add_option("--max-dim", gen.max_dim, "Largest passive dimension in mm");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->add_option("--name", gen.name, "Instance name (default: preset name)");
  generate->add_flag("--no-ground", gen.no_ground, "Omit the excluded ground pin");
  generate->add_option("-o,--out", gen.out, "Output directory");

  TrainArgs tr;
  auto *train = app.add_subcommand("train", "Train a placer on one instance");
  train->add_option("instance", tr.instance, "Instance file")->required();
  train->add_option("--method", tr.method, "dqn, dqnnet, a2c (or sa)")
      ->check(CLI::IsMember({"dqn", "dqnnet", "a2c", "sa"}));
  train->add_option("--seed", tr.flags.seed, "Run seed");
  train->add_option("-o,--out", tr.out, "Output directory");
  train->add_option("--export-gamma", tr.export_gamma, "Write the reward table as a text matrix");
  tr.flags.add_to(*train);

  std::string ev_instance, ev_placement, ev_out;
  auto *eval = app.add_subcommand("eval", "Compute metrics of a placement file");
  eval->add_option("instance", ev_instance, "Instance file")->required();
  eval->add_option("placement", ev_placement, "Placement file")->required();
  eval->add_option("-o,--out", ev_out, "Directory for report.csv");

  CompareArgs cmp;
  auto *compare = app.add_subcommand("compare", "Run methods across instances and seeds");
  compare->add_option("instances", cmp.instances, "Instance files")->required();
  compare->add_option("--methods", cmp.methods, "Methods to run")->delimiter(',');
  compare->add_option("--seeds", cmp.seeds, "Seeds per cell")->delimiter(',');
  compare->add_flag("--oracle", cmp.oracle, "Add a brute-force oracle row where feasible");
  compare->add_option("--jobs", cmp.jobs, "Worker threads (default: processors)");
  compare->add_option("-o,--out", cmp.out, "Output directory");
  cmp.flags.add_to(*compare);

  std::string rd_instance, rd_placement, rd_out;
  double rd_scale = 10.0;
  bool rd_no_labels = false;
  auto *render = app.add_subcommand("render", "Draw an instance and optional placement as SVG");
  render->add_option("instance", rd_instance, "Instance file")->required();
  render->add_option("placement", rd_placement, "Placement file");
  render->add_option("-o,--out", rd_out, "SVG path (default: stdout)");
  render->add_option("--scale", rd_scale, "Pixels per mm");
  render->add_flag("--no-labels", rd_no_labels, "Omit text labels");

  std::uint64_t gc_seed = kDefaultSeed;
  bool gc_corrupt = false;
  auto *gradcheck = app.add_subcommand("gradcheck", "Finite-difference check of the loss gradients");
  gradcheck->add_option("--seed", gc_seed, "Seed for networks and batches");
  gradcheck->add_flag("--corrupt", gc_corrupt, "Perturb analytic gradients (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate)
      return cmd_generate(gen);
    if (*train)
      return cmd_train(tr);
    if (*eval)
      return cmd_eval(ev_instance, ev_placement, ev_out);
    if (*compare)
      return cmd_compare(cmp);
    if (*render)
      return cmd_render(rd_instance, rd_placement, rd_out, rd_scale, rd_no_labels);
    if (*gradcheck)
      return cmd_gradcheck(gc_seed, gc_corrupt);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
