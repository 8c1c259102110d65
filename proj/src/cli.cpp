#include "qconv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <unistd.h>

#include "qconv/errors.hpp"
#include "qconv/experiments.hpp"
#include "qconv/magic.hpp"
#include "qconv/random.hpp"
#include "qconv/state_io.hpp"

namespace qconv::cli {

namespace {

using nlohmann::json;

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NotPrime:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::UnsupportedScale:
    case ErrorCode::DimensionMismatch:
      return kParseError;
    default:
      return kNumericError;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Temp file in the target directory, then rename.
void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) {
      std::remove(tmp.c_str());
      throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::ParseError, "cannot rename onto '" + path + "'");
  }
}

struct Sink {
  std::ostream& out;
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      write_atomic(path, text);
    }
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

struct StateArg {
  std::string file;
  std::string preset;
};

struct Common {
  int d = 0;
  int n = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
};

DensityMatrix load_state(const StateArg& s, const Common& c, std::uint64_t seed_index = 0) {
  std::optional<std::uint64_t> seed;
  if (c.seed) seed = mix_seed(*c.seed, seed_index);
  if (!s.file.empty()) {
    if (!s.preset.empty()) usage("give either a state file or a preset, not both");
    return state_from_json(parse_json_text(read_file(s.file)), seed);
  }
  if (s.preset.empty()) usage("a state file or preset is required");
  if (c.d == 0) usage("--d is required with a preset");
  if ((s.preset == "random-pure" || s.preset == "random-mixed") && !c.seed) {
    usage("preset '" + s.preset + "' needs --seed");
  }
  return preset_state(s.preset, c.d, c.n, seed);
}

struct SpecArg {
  std::string name = "default";
  std::string G;
};

ConvolutionSpec make_spec(const SpecArg& a, const QuditSpace& space) {
  const int d = space.d;
  require_convolution_dimension(d);
  if (!a.G.empty()) {
    std::vector<int> g;
    std::stringstream s(a.G);
    std::string item;
    while (std::getline(s, item, ',')) {
      try {
        g.push_back(std::stoi(item));
      } catch (const std::exception&) {
        usage("--G expects four comma-separated integers");
      }
    }
    if (g.size() != 4) usage("--G expects four comma-separated integers");
    return ConvolutionSpec(space, GMatrix(g[0], g[1], g[2], g[3], space.d));
  }
  if (a.name == "default") return ConvolutionSpec(space, default_gmatrix(space.d));
  if (a.name == "beam-splitter" || a.name == "amplifier") {
    if (d == 3 || d == 5) usage("no " + a.name + " exists for d = " + std::to_string(d));
    return a.name == "beam-splitter" ? beam_splitter_spec(d, space.n) : amplifier_spec(d, space.n);
  }
  usage("unknown spec '" + a.name + "'");
}

// Parse-time checks shared by convolution commands.
void check_convolution_args(const Common& c, const SpecArg& s) {
  if (c.d == 2) require_convolution_dimension(2);
  if ((c.d == 3 || c.d == 5) && (s.name == "beam-splitter" || s.name == "amplifier") && s.G.empty()) {
    usage("no " + s.name + " exists for d = " + std::to_string(c.d));
  }
}

void add_common(CLI::App* cmd, Common& c, bool seed_required = false) {
  cmd->add_option("--d", c.d, "local dimension (prime)");
  cmd->add_option("--n", c.n, "number of qudits");
  auto* seed = cmd->add_option("--seed", c.seed, "random seed");
  if (seed_required) seed->required();
  cmd->add_option("--out", c.out, "output path (stdout if absent)");
}

void add_spec(CLI::App* cmd, SpecArg& s) {
  cmd->add_option("--spec", s.name, "default | beam-splitter | amplifier")
      ->check(CLI::IsMember({"default", "beam-splitter", "amplifier"}));
  cmd->add_option("--G", s.G, "g00,g01,g10,g11");
}

json gap_report(const DensityMatrix& rho) {
  const auto mv = mean_vector(rho);
  auto gens = json::array();
  for (const auto& g : mv.generators) gens.push_back(phase_point_to_json(g));
  const auto det = is_msps(rho);
  json j;
  j["d"] = rho.d();
  j["n"] = rho.n();
  j["magic_gap"] = magic_gap(rho);
  j["log_magic_gap"] = log_magic_gap(rho);
  j["pauli_rank"] = pauli_rank(rho);
  j["is_msps"] = det.is_msps;
  j["mean_vector"] = {{"generators", gens}, {"k", mv.k}};
  const auto mean = is_msps(mean_state(rho));
  j["mean_state_group"] = mean.group ? group_to_json(*mean.group) : json(nullptr);
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qudit convolution toolkit"};
  app.require_subcommand(1);

  Common gc;
  StateArg gs;
  bool emit_char = false;
  auto* gap = app.add_subcommand("gap", "magic gap, Pauli rank and mean vector of a state");
  add_common(gap, gc);
  gap->add_option("--state", gs.file, "state JSON file");
  gap->add_option("--preset", gs.preset, "preset state name");
  gap->add_flag("--emit-char", emit_char, "write the characteristic function as a char-kind state");

  Common cc;
  StateArg ca, cb;
  SpecArg cs;
  bool check_duality = false;
  auto* conv = app.add_subcommand("convolve", "convolution of two states");
  add_common(conv, cc);
  add_spec(conv, cs);
  conv->add_option("--a", ca.file, "first state JSON file");
  conv->add_option("--a-preset", ca.preset, "first state preset");
  conv->add_option("--b", cb.file, "second state JSON file");
  conv->add_option("--b-preset", cb.preset, "second state preset");
  conv->add_flag("--check-duality", check_duality, "print the characteristic-function duality deviation");

  Common tc;
  StateArg ts;
  SpecArg tspec;
  tspec.name = "beam-splitter";
  int steps = 30;
  std::string clt_format = "csv";
  auto* clt = app.add_subcommand("clt", "iterated self-convolution series");
  add_common(clt, tc, true);
  add_spec(clt, tspec);
  clt->add_option("--state", ts.file, "state JSON file");
  clt->add_option("--preset", ts.preset, "preset state name");
  clt->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
  clt->add_option("--format", clt_format)->check(CLI::IsMember({"csv", "json"}));

  Common sc;
  std::string suite_name;
  SuiteOptions sopt;
  std::string suite_format = "json";
  bool timing = false;
  auto* suite = app.add_subcommand("suite", "run a property suite");
  add_common(suite, sc);
  suite->add_option("name", suite_name, "suite name")->required()->check(CLI::IsMember(suite_names()));
  suite->add_option("--trials", sopt.trials, "trials per configuration (0 = default)")->check(CLI::NonNegativeNumber);
  suite->add_option("--steps", sopt.steps, "CLT steps")->check(CLI::NonNegativeNumber);
  suite->add_option("--jobs", sopt.jobs, "worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--format", suite_format)->check(CLI::IsMember({"csv", "json"}));
  suite->add_flag("--timing", timing, "include wall-clock time in JSON output");

  Common ec;
  std::string enum_what;
  auto* enumerate = app.add_subcommand("enumerate", "list MSPS or pure stabilizer states");
  add_common(enumerate, ec);
  enumerate->add_option("what", enum_what)->required()->check(CLI::IsMember({"msps", "stabilizers"}));

  Common kc;
  StateArg ks, kr;
  SpecArg kspec;
  auto* capacity = app.add_subcommand("capacity-bounds", "Holevo capacity bounds of a convolutional channel");
  add_common(capacity, kc);
  add_spec(capacity, kspec);
  capacity->add_option("--state", ks.file, "environment state JSON file");
  capacity->add_option("--preset", ks.preset, "environment state preset");
  capacity->add_option("--ensemble", kr.file, "seed state for the Weyl-orbit ensemble");
  capacity->add_option("--ensemble-preset", kr.preset, "preset seed state for the Weyl-orbit ensemble");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kPass : kParseError;
  }

  try {
    if (gap->parsed()) {
      const auto rho = load_state(gs, gc);
      const Sink sink{out, gc.out};
      if (emit_char) {
        sink.emit(char_to_json(char_function(rho)));
      } else {
        sink.emit(gap_report(rho));
      }
      return kPass;
    }

    if (conv->parsed()) {
      check_convolution_args(cc, cs);
      const auto a = load_state(ca, cc, 0);
      const auto b = load_state(cb, cc, 1);
      if (!(a.space() == b.space())) throw Error(ErrorCode::DimensionMismatch, "states live on different spaces");
      const auto spec = make_spec(cs, a.space());
      const auto result = convolve(a, b, spec);
      Sink{out, cc.out}.emit(state_to_json(result));
      if (check_duality) {
        const auto dual = convolve_characteristic(char_function(a), char_function(b), spec);
        const double dev = (dual.values() - char_function(result).values()).cwiseAbs().maxCoeff();
        err << "duality_max_deviation " << format_double(dev) << '\n';
        if (!(dev < 1e-10)) return kViolation;
      }
      return kPass;
    }

    if (clt->parsed()) {
      check_convolution_args(tc, tspec);
      const auto rho = load_state(ts, tc);
      const auto spec = make_spec(tspec, rho.space());
      const auto series = clt_run(rho, spec, steps);
      const Sink sink{out, tc.out};
      if (clt_format == "csv") {
        sink.emit(clt_to_csv(series));
      } else {
        sink.emit(clt_to_json(series));
      }
      for (const auto& s : series.steps)
        if (!(s.distance <= s.bound + 1e-9)) return kViolation;
      return kPass;
    }

    if (suite->parsed()) {
      const std::vector<std::string> deterministic{"stability", "min-output"};
      const bool needs_seed =
          std::find(deterministic.begin(), deterministic.end(), suite_name) == deterministic.end();
      if (needs_seed && !sc.seed) usage("suite '" + suite_name + "' needs --seed");
      const std::map<std::string, int> fixed_d{
          {"extremality", 3}, {"stability", 3}, {"min-output", 3}, {"clt", 7}, {"synthesis", 2}};
      if (const auto it = fixed_d.find(suite_name); sc.d != 0 && it != fixed_d.end() && it->second != sc.d) {
        usage("suite '" + suite_name + "' runs at d = " + std::to_string(it->second));
      }
      sopt.seed = sc.seed.value_or(0);
      const auto report = run_suite(suite_name, sopt);
      const Sink sink{out, sc.out};
      if (suite_format == "csv") {
        sink.emit(report.to_csv());
      } else {
        sink.emit(report.to_json(timing));
      }
      err << report.suite << ": " << (report.pass ? "pass" : "FAIL") << ", " << report.violations
          << " violations, max violation " << format_double(report.max_violation) << '\n';
      return report.pass ? kPass : kViolation;
    }

    if (enumerate->parsed()) {
      if (ec.d == 0) usage("--d is required");
      const QuditSpace space(ec.d, ec.n);
      auto arr = json::array();
      for (const auto& g : enumerate_msps_groups(space)) {
        if (enum_what == "stabilizers" && g.rank() != static_cast<std::size_t>(space.n)) continue;
        auto entry = group_to_json(g);
        entry["state"] = state_to_json(msps_from_group(g, space));
        arr.push_back(entry);
      }
      Sink{out, ec.out}.emit(arr);
      return kPass;
    }

    if (capacity->parsed()) {
      check_convolution_args(kc, kspec);
      const auto sigma = load_state(ks, kc, 0);
      const ConvolutionChannel chan(make_spec(kspec, sigma.space()), sigma);
      const auto bounds = holevo_bounds(chan);
      json j{{"spec", spec_to_json(chan.spec)}, {"lower", bounds.lower}, {"upper", bounds.upper}};
      if (!kr.file.empty() || !kr.preset.empty()) {
        j["ensemble"] = holevo_weyl_ensemble(chan, load_state(kr, kc, 1));
      }
      Sink{out, kc.out}.emit(j);
      return bounds.lower <= bounds.upper + 1e-9 ? kPass : kViolation;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return kParseError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qconv::cli
