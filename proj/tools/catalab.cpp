// catalab command-line harness: scenario runs, energy floor calculations,
// the register-machine toolbox, report merging, and artifact generation.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "catalab/catalab.hpp"

namespace fs = std::filesystem;
using namespace catalab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLawViolation = 2;

/// Bit counts accept `2^k` power notation alongside plain decimals.
double parse_bits(const std::string& text) {
  if (text.rfind("2^", 0) == 0) {
    const int k = std::stoi(text.substr(2));
    if (k < 0 || k > 1023) throw error("bit count exponent out of range");
    return std::ldexp(1.0, k);
  }
  return std::stod(text);
}

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("CATALAB_SEED");
  if (!env || !*env) return std::nullopt;
  return std::strtoull(env, nullptr, 10);
}

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path.string());
  Json j;
  in >> j;
  return j;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot write " + path.string());
  out << body;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::uint64_t> parse_u64_csv(const std::string& text, int base) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::strtoull(item.c_str(), nullptr, base));
  return out;
}

// -- run ---------------------------------------------------------------------

int run_one_scenario(const fs::path& file, const fs::path& out_base) {
  Scenario sc;
  try {
    Json j = load_json(file);
    sc = scenario_from_json(j);
    if (auto seed = env_seed_override()) {
      sc.class_seed = mix_seed(*seed, 1);
      sc.adapt_seed = mix_seed(*seed, 2);
      sc.bench_seed = mix_seed(*seed, 3);
    }
    const RunReport rep = run_scenario(sc);

    const fs::path dir = out_base / sc.name;
    fs::create_directories(dir);
    write_text(dir / "report.json", to_json(rep).dump(2) + "\n");
    write_text(dir / "gamma_ladder.csv", ladder_to_csv(rep.catalyst.ladder));
    write_text(dir / "energy.csv", energy_to_csv(rep));

    if (!rep.violations.empty()) {
      std::cerr << file.string() << ": law violation:";
      for (const auto& v : rep.violations) std::cerr << ' ' << v;
      std::cerr << '\n';
      return kExitLawViolation;
    }
    std::cout << file.string() << " -> " << (dir / "report.json").string()
              << " (gamma " << rep.speedup.gamma << ", "
              << (rep.catalyst.verdict == Verdict::CATALYST ? "CATALYST"
                                                            : "NOT_CATALYST")
              << ")\n";
    return kExitOk;
  } catch (const std::exception& ex) {
    std::cerr << file.string() << ": error: " << ex.what() << '\n';
    return kExitError;
  }
}

int cmd_run(const std::vector<std::string>& files, const std::string& out_dir,
            unsigned jobs) {
  if (files.empty()) {
    std::cerr << "run: no scenario files\n";
    return kExitError;
  }
  const fs::path out_base = out_dir;
  std::vector<int> codes(files.size(), kExitOk);
  if (jobs <= 1 || files.size() == 1) {
    for (std::size_t i = 0; i < files.size(); ++i)
      codes[i] = run_one_scenario(files[i], out_base);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(jobs, unsigned(files.size()));
    for (unsigned t = 0; t < count; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < files.size();
             i = next.fetch_add(1))
          codes[i] = run_one_scenario(files[i], out_base);
      });
    }
    for (auto& th : pool) th.join();
  }
  int worst = kExitOk;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

// -- energy ------------------------------------------------------------------

int cmd_energy(const std::string& n_bits_text, double temp, double overhead,
               double overhead_adapt, double tau, double intelligence) {
  PhysicalConfig cfg;
  cfg.temperature_kelvin = temp;
  cfg.overhead_exec = overhead;
  cfg.overhead_adapt = overhead_adapt > 0 ? overhead_adapt : overhead;
  const double n_bits = parse_bits(n_bits_text);
  const IntelligenceScore score = IntelligenceScore::make({{intelligence, 1.0}});

  EnergyReport e;
  e.landauer_c_j = landauer_cost(cfg);
  e.floor_exec_j = energy_floor(cfg, n_bits, Substrate::exec);
  const WpiResult w = wpi(e.floor_exec_j, tau, score, e.floor_exec_j);
  e.wpi_w = w.phi;
  e.wpi_floor_w = *w.phi_floor;
  e.restore_floor_j = 0;
  e.adapt_floor_j = 0;
  e.breakeven_count = Breakeven::no_horizon();
  e.tau_s = tau;
  std::cout << to_json(e).dump(2) << '\n';
  return kExitOk;
}

// -- vm ----------------------------------------------------------------------

int cmd_vm_compile(const std::string& formula_file, const std::string& out) {
  const Formula f = parse_formula(read_text(formula_file));
  const RegisterProgram p = compile_formula(f);
  const std::string text = format_program(p);
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
  std::cerr << "compiled: " << p.length() << " instructions, "
            << p.reg_count << " registers, " << p.input_count << " inputs\n";
  return kExitOk;
}

int cmd_vm_run(const std::string& program_file, std::uint32_t width,
               const std::string& inputs_csv, const std::string& aux_csv,
               bool cycle) {
  const RegisterProgram p = parse_program(read_text(program_file));
  const std::vector<std::uint64_t> inputs = parse_u64_csv(inputs_csv, 10);
  MachineState aux;
  aux.width = width;
  aux.aux = parse_u64_csv(aux_csv, 16);
  if (inputs.size() != p.input_count)
    throw vm_error("run: program expects " + std::to_string(p.input_count) +
                   " inputs");
  CostMeter meter;
  const RunResult res = cycle ? run_cycle(p, inputs, aux, meter)
                              : run(p, inputs, aux, meter);
  Json j;
  Json regs = Json::array();
  char buf[32];
  for (auto r : res.final_state.aux) {
    std::snprintf(buf, sizeof buf, "%llx", (unsigned long long)r);
    regs.push_back(std::string(buf));
  }
  j["aux_final"] = regs;
  j["output_delta"] = res.output_delta;
  j["restoration_delta_bits"] = restoration_delta(aux, res.final_state);
  j["steps"] = res.steps;
  j["clean_scratch_bits"] = res.clean_scratch_bits;
  j["n_exec_bits"] = meter.exec_irrev_bits;
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_vm_fuzz(std::size_t cases, std::size_t depth, std::uint32_t vars,
                std::uint32_t width, std::uint64_t seed) {
  if (auto env = env_seed_override()) seed = *env;
  const std::size_t failures = fuzz_vm(cases, depth, vars, width, seed);
  Json j;
  j["cases"] = cases;
  j["depth"] = depth;
  j["vars"] = vars;
  j["ring_width"] = width;
  j["seed"] = seed;
  j["failures"] = failures;
  std::cout << j.dump(2) << '\n';
  return failures == 0 ? kExitOk : kExitError;
}

// -- report ------------------------------------------------------------------

int cmd_report(const std::string& dir, const std::string& out_dir) {
  if (!fs::is_directory(dir)) {
    std::cerr << "report: not a directory: " << dir << '\n';
    return kExitError;
  }
  struct Row {
    std::string name;
    Json report;
  };
  std::vector<Row> rows;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json")
      continue;
    try {
      Json j = load_json(entry.path());
      if (!j.contains("scenario") || !j.contains("speedup") ||
          !j.contains("catalyst") || !j.contains("energy"))
        continue;
      rows.push_back(
          Row{j["scenario"]["name"].get<std::string>(), std::move(j)});
    } catch (const std::exception& ex) {
      std::cerr << "report: skipping " << entry.path().string() << ": "
                << ex.what() << '\n';
    }
  }
  if (rows.empty()) {
    std::cerr << "report: no readable reports under " << dir << '\n';
    return kExitError;
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.name < b.name; });

  std::string summary =
      "scenario,n,d,m,gamma,log2_gamma,verdict,mu_bits,slack_bits,"
      "breakeven_count,adapt_floor_j,restore_floor_j,floor_exec_j\n";
  std::string ladder_long = "scenario,size,gamma\n";
  for (const auto& row : rows) {
    const Json& j = row.report;
    const double gamma = j["speedup"]["gamma"].get<double>();
    summary += row.name + ",";
    summary += j["scenario"]["class"]["n"].dump() + ",";
    summary += j["scenario"]["class"]["d"].dump() + ",";
    summary += j["scenario"]["adaptation"]["m"].dump() + ",";
    summary += Json(gamma).dump() + ",";
    summary += Json(std::log2(gamma)).dump() + ",";
    summary += j["catalyst"]["verdict"].get<std::string>() + ",";
    summary += j["catalyst"]["mu_bits"].dump() + ",";
    summary += j["catalyst"]["slack_bits"].dump() + ",";
    summary += j["energy"]["breakeven_count"].dump() + ",";
    summary += j["energy"]["adapt_floor_j"].dump() + ",";
    summary += j["energy"]["restore_floor_j"].dump() + ",";
    summary += j["energy"]["floor_exec_j"].dump() + "\n";
    for (const auto& rung : j["catalyst"]["ladder"])
      ladder_long += row.name + "," + rung["size"].dump() + "," +
                     rung["gamma"].dump() + "\n";
  }
  const fs::path out_base = out_dir.empty() ? fs::path(dir) : fs::path(out_dir);
  fs::create_directories(out_base);
  write_text(out_base / "summary.csv", summary);
  write_text(out_base / "ladder_long.csv", ladder_long);
  std::cout << "wrote " << (out_base / "summary.csv").string() << " ("
            << rows.size() << " scenarios)\n";
  return kExitOk;
}

// -- gen ---------------------------------------------------------------------

int cmd_gen_class(std::size_t n, std::size_t d, std::uint64_t seed,
                  const std::string& out) {
  const AffineSubspace V = AffineSubspace::random(n, d, seed);
  const std::string body = to_json(V, seed).dump(2) + "\n";
  if (out.empty())
    std::cout << body;
  else
    write_text(out, body);
  return kExitOk;
}

int cmd_gen_instance(const std::string& class_file, std::uint64_t seed,
                     const std::string& out, const std::string& solutions_csv) {
  const AffineSubspace V = subspace_from_json(load_json(class_file));
  const InstanceSpec inst = make_instance(V, seed);
  const std::string body = to_json(inst).dump(2) + "\n";
  if (out.empty())
    std::cout << body;
  else
    write_text(out, body);
  if (!solutions_csv.empty()) {
    CostMeter meter;
    write_text(solutions_csv, solutions_to_csv(solve_baseline(inst, meter)));
  }
  return kExitOk;
}

int cmd_gen_samples(const std::string& class_file, std::size_t m,
                    std::uint64_t seed, const std::string& out) {
  const AffineSubspace V = subspace_from_json(load_json(class_file));
  const SampleSet s = draw_samples(V, m, seed);
  const std::string body = to_json(s, seed).dump(2) + "\n";
  if (out.empty())
    std::cout << body;
  else
    write_text(out, body);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catalab: energy accounting workbench for structured solvers"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run scenario files");
  std::vector<std::string> run_files;
  std::string run_out = "out";
  unsigned run_jobs = 1;
  run_cmd->add_option("files", run_files, "scenario JSON files")->required();
  run_cmd->add_option("--out", run_out, "output base directory");
  run_cmd->add_option("--jobs", run_jobs, "concurrent scenarios");

  // energy
  auto* energy_cmd = app.add_subcommand("energy", "print an energy report");
  std::string e_bits;
  double e_temp = 300.0, e_overhead = 1.0, e_overhead_adapt = 0.0,
         e_tau = 1.0, e_intel = 1.0;
  energy_cmd->add_option("--n-bits", e_bits,
                         "irreversible bit count (accepts 2^k)")
      ->required();
  energy_cmd->add_option("--temp", e_temp, "temperature in kelvin");
  energy_cmd->add_option("--overhead", e_overhead, "execution overhead factor");
  energy_cmd->add_option("--overhead-adapt", e_overhead_adapt,
                         "adaptation overhead factor (defaults to --overhead)");
  energy_cmd->add_option("--tau", e_tau, "deployment horizon in seconds");
  energy_cmd->add_option("--intelligence", e_intel, "intelligence score");

  // vm
  auto* vm_cmd = app.add_subcommand("vm", "register machine toolbox");
  vm_cmd->require_subcommand(1);
  auto* vmc = vm_cmd->add_subcommand("compile", "compile a formula file");
  std::string vmc_formula, vmc_out;
  vmc->add_option("formula", vmc_formula, "formula file")->required();
  vmc->add_option("--out", vmc_out, "program file (stdout when omitted)");
  auto* vmr = vm_cmd->add_subcommand("run", "run a program");
  std::string vmr_prog, vmr_inputs, vmr_aux;
  std::uint32_t vmr_width = 1;
  bool vmr_cycle = false;
  vmr->add_option("program", vmr_prog, "program file")->required();
  vmr->add_option("--width", vmr_width, "ring width (1 = GF(2))");
  vmr->add_option("--inputs", vmr_inputs, "comma-separated decimal inputs");
  vmr->add_option("--aux", vmr_aux, "comma-separated hex aux registers")
      ->required();
  vmr->add_flag("--cycle", vmr_cycle, "run program then its reversal");
  auto* vmf = vm_cmd->add_subcommand("fuzz", "randomized contract check");
  std::size_t vmf_cases = 10000, vmf_depth = 3;
  std::uint32_t vmf_vars = 8, vmf_width = 1;
  std::uint64_t vmf_seed = 1;
  vmf->add_option("--cases", vmf_cases, "number of cases");
  vmf->add_option("--depth", vmf_depth, "maximum formula depth");
  vmf->add_option("--vars", vmf_vars, "number of inputs");
  vmf->add_option("--width", vmf_width, "ring width (1 = GF(2))");
  vmf->add_option("--seed", vmf_seed, "seed (CATALAB_SEED overrides)");

  // report
  auto* report_cmd = app.add_subcommand("report", "merge run reports");
  std::string rep_dir, rep_out;
  report_cmd->add_option("dir", rep_dir, "directory of reports")->required();
  report_cmd->add_option("--out", rep_out, "output directory (defaults to dir)");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate artifacts");
  gen_cmd->require_subcommand(1);
  auto* gc = gen_cmd->add_subcommand("class", "random affine class");
  std::size_t gc_n = 16, gc_d = 6;
  std::uint64_t gc_seed = 1;
  std::string gc_out;
  gc->add_option("--n", gc_n, "dimension")->required();
  gc->add_option("--d", gc_d, "subspace dimension")->required();
  gc->add_option("--seed", gc_seed, "seed");
  gc->add_option("--out", gc_out, "output file (stdout when omitted)");
  auto* gi = gen_cmd->add_subcommand("instance", "instance of a class");
  std::string gi_class, gi_out, gi_solutions;
  std::uint64_t gi_seed = 1;
  gi->add_option("--class", gi_class, "class JSON file")->required();
  gi->add_option("--seed", gi_seed, "presentation seed");
  gi->add_option("--out", gi_out, "output file (stdout when omitted)");
  gi->add_option("--solutions", gi_solutions,
                 "also solve and write sorted hex CSV here");
  auto* gs = gen_cmd->add_subcommand("samples", "samples from a class");
  std::string gs_class, gs_out;
  std::size_t gs_m = 1;
  std::uint64_t gs_seed = 1;
  gs->add_option("--class", gs_class, "class JSON file")->required();
  gs->add_option("--m", gs_m, "sample count")->required();
  gs->add_option("--seed", gs_seed, "seed");
  gs->add_option("--out", gs_out, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run_files, run_out, run_jobs);
    if (*energy_cmd)
      return cmd_energy(e_bits, e_temp, e_overhead, e_overhead_adapt, e_tau,
                        e_intel);
    if (*vm_cmd) {
      if (*vmc) return cmd_vm_compile(vmc_formula, vmc_out);
      if (*vmr)
        return cmd_vm_run(vmr_prog, vmr_width, vmr_inputs, vmr_aux, vmr_cycle);
      if (*vmf)
        return cmd_vm_fuzz(vmf_cases, vmf_depth, vmf_vars, vmf_width,
                           vmf_seed);
    }
    if (*report_cmd) return cmd_report(rep_dir, rep_out);
    if (*gen_cmd) {
      if (*gc) return cmd_gen_class(gc_n, gc_d, gc_seed, gc_out);
      if (*gi) return cmd_gen_instance(gi_class, gi_seed, gi_out, gi_solutions);
      if (*gs) return cmd_gen_samples(gs_class, gs_m, gs_seed, gs_out);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
