#include "qconv/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "qconv/clifford.hpp"
#include "qconv/errors.hpp"
#include "qconv/magic.hpp"
#include "qconv/random.hpp"

namespace qconv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string alpha_label(double a) {
  if (a == kInf) return "inf";
  if (a == -kInf) return "-inf";
  std::ostringstream s;
  s << a;
  return s.str();
}

using TrialFn = std::function<void(std::size_t, ExperimentReport&)>;

// Runs trials on up to `jobs` threads; records are merged in index order so
// the report does not depend on scheduling.
void run_trials(ExperimentReport& report, std::size_t count, int jobs, const TrialFn& fn) {
  std::vector<ExperimentReport> parts(count);
  auto body = [&](std::size_t i) {
    try {
      fn(i, parts[i]);
    } catch (const std::exception& e) {
      parts[i].add_check(i, std::string("error:") + e.what(), kInf, 0.0, kInf, 0.0);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      });
    }
  }
  for (const auto& p : parts) report.append(p.records);
}

struct ConvConfig {
  int d;
  int n;
  enum class Kind { Generic, BeamSplitter, Amplifier } kind;

  ConvolutionSpec spec() const {
    switch (kind) {
      case Kind::BeamSplitter: return beam_splitter_spec(d, n);
      case Kind::Amplifier: return amplifier_spec(d, n);
      case Kind::Generic: break;
    }
    return ConvolutionSpec(QuditSpace(d, n), default_gmatrix(PrimeModulus(d)));
  }

  std::string label() const {
    std::string k = kind == Kind::Generic ? "G" : (kind == Kind::BeamSplitter ? "bs" : "amp");
    return "d" + std::to_string(d) + "n" + std::to_string(n) + k;
  }
};

nlohmann::json describe(const ConvolutionSpec& spec) {
  const auto& G = spec.G();
  return {{"d", spec.space().d.value()},
          {"n", spec.space().n},
          {"G", {{G.g00(), G.g01()}, {G.g10(), G.g11()}}}};
}

nlohmann::json describe(const std::vector<ConvConfig>& configs) {
  auto arr = nlohmann::json::array();
  for (const auto& c : configs) arr.push_back(describe(c.spec()));
  return arr;
}

int random_rank(Rng& rng, Eigen::Index dim) { return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(dim))); }

int trials_or(const SuiteOptions& o, int fallback) { return o.trials > 0 ? o.trials : fallback; }

ExperimentReport start(const char* name, const SuiteOptions& o) {
  ExperimentReport r;
  r.suite = name;
  r.seed = o.seed;
  return r;
}

bool beam_splitter_form(const GMatrix& G) {
  const auto& m = G.modulus();
  return G.g00() == m.reduce(-G.g11()) && G.g01() == G.g10() &&
         m.reduce(static_cast<std::int64_t>(G.g00()) * G.g00() + static_cast<std::int64_t>(G.g01()) * G.g01()) == 1;
}

// Direction of a rank-1 group in row echelon form, for label-level comparison.
ZVector direction(const StabilizerGroup& g, const PrimeModulus& d) {
  ZMatrix rows;
  for (const auto& x : g.generators) rows.push_back(x.flat());
  auto echelon = row_echelon(rows, d);
  ZVector flat;
  for (const auto& row : echelon) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

}  // namespace

std::optional<double> CltSeries::fitted_log_slope() const {
  std::vector<std::pair<double, double>> pts;
  if (initial_distance > 1e-12) pts.emplace_back(0.0, std::log(initial_distance));
  for (const auto& s : steps)
    if (s.distance > 1e-12) pts.emplace_back(static_cast<double>(s.step), std::log(s.distance));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

CltSeries clt_run(const DensityMatrix& rho, const ConvolutionSpec& spec, int max_steps,
                  const std::vector<double>& alphas) {
  const int d = spec.space().d;
  if (d == 2 || d == 3 || d == 5) {
    throw Error(ErrorCode::UnsupportedDimension, "no beam splitter exists for d = " + std::to_string(d));
  }
  if (!beam_splitter_form(spec.G())) {
    throw Error(ErrorCode::DomainError, "CLT iteration uses a beam-splitter matrix [s, t; t, -s]");
  }
  if (max_steps < 0) throw Error(ErrorCode::DomainError, "negative step count");

  auto zero_mean = make_zero_mean(rho);
  const DensityMatrix& start_state = zero_mean.state;
  const DensityMatrix mean = mean_state(start_state);

  CltSeries series;
  series.displacement = std::move(zero_mean.displacement);
  series.magic_gap = magic_gap(start_state);
  series.initial_distance = schatten2_norm(start_state.matrix() - mean.matrix());
  series.alphas = alphas;
  const auto spectrum0 = herm_eig(start_state.matrix()).eigenvalues;
  for (double a : alphas) series.initial_entropies.push_back(renyi_entropy(spectrum0, AlphaParam{a}));

  DensityMatrix current = start_state;
  double factor = 1.0;
  for (int step = 1; step <= max_steps; ++step) {
    current = convolve(current, start_state, spec);
    factor *= 1.0 - series.magic_gap;
    CltStep s;
    s.step = step;
    s.distance = schatten2_norm(current.matrix() - mean.matrix());
    s.bound = factor * series.initial_distance;
    const auto spectrum = herm_eig(current.matrix()).eigenvalues;
    for (double a : alphas) s.entropies.push_back(renyi_entropy(spectrum, AlphaParam{a}));
    series.steps.push_back(std::move(s));
  }
  return series;
}

std::string clt_to_csv(const CltSeries& series) {
  std::ostringstream out;
  out << "step,distance,bound";
  for (double a : series.alphas) out << ",H_" << alpha_label(a);
  out << '\n';
  for (const auto& s : series.steps) {
    out << s.step << ',' << format_double(s.distance) << ',' << format_double(s.bound);
    for (double h : s.entropies) out << ',' << format_double(h);
    out << '\n';
  }
  return out.str();
}

nlohmann::json clt_to_json(const CltSeries& series) {
  nlohmann::json j;
  j["displacement"] = series.displacement.flat();
  j["magic_gap"] = series.magic_gap;
  j["initial_distance"] = series.initial_distance;
  auto alphas = nlohmann::json::array();
  for (double a : series.alphas) alphas.push_back(alpha_label(a));
  j["alphas"] = alphas;
  j["initial_entropies"] = series.initial_entropies;
  auto steps = nlohmann::json::array();
  for (const auto& s : series.steps) {
    steps.push_back({{"step", s.step}, {"distance", s.distance}, {"bound", s.bound}, {"entropies", s.entropies}});
  }
  j["steps"] = steps;
  if (auto slope = series.fitted_log_slope()) j["fitted_log_slope"] = *slope;
  return j;
}

ExperimentReport suite_extremality(const SuiteOptions& o) {
  auto report = start("extremality", o);
  const int trials = trials_or(o, 50);
  const QuditSpace space(3, 1);
  const auto candidates = enumerate_msps(space);
  const std::vector<double> alphas{1.0, 2.0, kInf};
  report.parameters = {{"d", 3}, {"n", 1}, {"trials", trials}, {"alphas", {"1", "2", "inf"}}};

  run_trials(report, static_cast<std::size_t>(trials), o.jobs, [&](std::size_t i, ExperimentReport& out) {
    const auto trial_seed = mix_seed(o.seed, i);
    Rng rng(trial_seed);
    const DensityMatrix rho = (i % 5 == 4) ? candidates[rng.below(candidates.size())]
                                           : random_density(mix_seed(trial_seed, 1), space, 1 + static_cast<int>(i % 3));
    const DensityMatrix mean = mean_state(rho);
    for (double a : alphas) {
      const std::string tag = "alpha=" + alpha_label(a);
      std::vector<double> div;
      for (const auto& sigma : candidates) div.push_back(sandwiched_relative_entropy(rho, sigma, AlphaParam{a}));
      std::size_t best = 0;
      for (std::size_t j = 1; j < div.size(); ++j)
        if (div[j] < div[best]) best = j;
      const double argmin_dev = (candidates[best].matrix() - mean.matrix()).cwiseAbs().maxCoeff();
      out.add_upper(i, tag + ":argmin_is_mean_state", argmin_dev, 0.0, 1e-9);

      const double identity = renyi_entropy(mean, AlphaParam{a}) - renyi_entropy(rho, AlphaParam{a});
      out.add_check(i, tag + ":min_equals_entropy_gap", div[best], identity, std::abs(div[best] - identity), 1e-8);

      double runner_up = kInf;
      for (std::size_t j = 0; j < div.size(); ++j)
        if (j != best) runner_up = std::min(runner_up, div[j]);
      if (std::isfinite(runner_up)) {
        // strict: every other finite divergence exceeds the minimum by > 1e-8
        out.add_check(i, tag + ":unique_minimizer", runner_up - div[best], 1e-8, 1e-8 - (runner_up - div[best]),
                      -1e-300);
      } else {
        out.add_info(i, tag + ":other_msps_all_infinite", runner_up);
      }
    }
  });
  return report;
}

ExperimentReport suite_entropy(const SuiteOptions& o) {
  auto report = start("entropy", o);
  const int trials = trials_or(o, 100);
  const std::vector<ConvConfig> configs{{3, 1, ConvConfig::Kind::Generic},
                                        {3, 2, ConvConfig::Kind::Generic},
                                        {7, 1, ConvConfig::Kind::BeamSplitter},
                                        {7, 1, ConvConfig::Kind::Amplifier}};
  const std::vector<double> general{0.0, 0.5, 1.0, 2.0, 3.0, kInf};
  const std::vector<double> negative{-1.0, -kInf};
  report.parameters = {{"trials_per_config", trials},
                       {"configs", describe(configs)},
                       {"alphas", {"0", "0.5", "1", "2", "3", "inf"}},
                       {"full_rank_alphas", {"-1", "-inf"}}};
  std::vector<ConvolutionSpec> specs;
  for (const auto& c : configs) specs.push_back(c.spec());

  const auto total = configs.size() * static_cast<std::size_t>(trials);
  run_trials(report, total, o.jobs, [&](std::size_t idx, ExperimentReport& out) {
    const std::size_t c = idx / static_cast<std::size_t>(trials);
    const auto& spec = specs[c];
    const auto& space = spec.space();
    const auto trial_seed = mix_seed(o.seed, idx);
    Rng rng(trial_seed);
    const std::string cfg = configs[c].label();

    auto check = [&](const DensityMatrix& rho, const DensityMatrix& sigma, const std::vector<double>& grid,
                     const std::string& kind) {
      const auto out_spec = herm_eig(convolve(rho, sigma, spec).matrix()).eigenvalues;
      const auto r_spec = herm_eig(rho.matrix()).eigenvalues;
      const auto s_spec = herm_eig(sigma.matrix()).eigenvalues;
      for (double a : grid) {
        const double h_out = renyi_entropy(out_spec, AlphaParam{a});
        const double h_in = std::max(renyi_entropy(r_spec, AlphaParam{a}), renyi_entropy(s_spec, AlphaParam{a}));
        out.add_lower(idx, cfg + ":" + kind + ":H_" + alpha_label(a), h_out, h_in, 1e-8);
      }
    };

    const int r1 = random_rank(rng, space.dim());
    const int r2 = random_rank(rng, space.dim());
    check(random_density(mix_seed(trial_seed, 1), space, r1), random_density(mix_seed(trial_seed, 2), space, r2),
          general, "any");
    std::vector<double> all = general;
    all.insert(all.end(), negative.begin(), negative.end());
    const int full = static_cast<int>(space.dim());
    check(random_density(mix_seed(trial_seed, 3), space, full), random_density(mix_seed(trial_seed, 4), space, full),
          all, "full");
  });
  return report;
}

ExperimentReport suite_fisher(const SuiteOptions& o) {
  auto report = start("fisher", o);
  const int trials = trials_or(o, 100);
  const std::vector<ConvConfig> configs{{3, 1, ConvConfig::Kind::Generic}, {7, 1, ConvConfig::Kind::BeamSplitter}};
  report.parameters = {{"trials_per_config", trials}, {"configs", describe(configs)}};
  std::vector<ConvolutionSpec> specs;
  for (const auto& c : configs) specs.push_back(c.spec());

  run_trials(report, configs.size() * static_cast<std::size_t>(trials), o.jobs,
             [&](std::size_t idx, ExperimentReport& out) {
               const std::size_t c = idx / static_cast<std::size_t>(trials);
               const auto& spec = specs[c];
               const int full = static_cast<int>(spec.space().dim());
               const auto trial_seed = mix_seed(o.seed, idx);
               const auto rho = random_density(mix_seed(trial_seed, 1), spec.space(), full);
               const auto sigma = random_density(mix_seed(trial_seed, 2), spec.space(), full);
               const double j_out = total_fisher(convolve(rho, sigma, spec));
               const double j_in = std::min(total_fisher(rho), total_fisher(sigma));
               out.add_upper(idx, configs[c].label() + ":J_out<=min", j_out, j_in, 1e-6);
             });
  return report;
}

ExperimentReport suite_monotonicity(const SuiteOptions& o) {
  auto report = start("monotonicity", o);
  const int trials = trials_or(o, 100);
  const std::vector<ConvConfig> configs{{3, 1, ConvConfig::Kind::Generic},
                                        {3, 2, ConvConfig::Kind::Generic},
                                        {7, 1, ConvConfig::Kind::BeamSplitter}};
  report.parameters = {{"trials_per_config", trials}, {"configs", describe(configs)}};
  std::vector<ConvolutionSpec> specs;
  for (const auto& c : configs) specs.push_back(c.spec());

  run_trials(report, configs.size() * static_cast<std::size_t>(trials), o.jobs,
             [&](std::size_t idx, ExperimentReport& out) {
               const std::size_t c = idx / static_cast<std::size_t>(trials);
               const auto& spec = specs[c];
               const auto& space = spec.space();
               const auto trial_seed = mix_seed(o.seed, idx);
               Rng rng(trial_seed);
               const auto rho = random_density(mix_seed(trial_seed, 1), space, random_rank(rng, space.dim()));
               const auto sigma = random_density(mix_seed(trial_seed, 2), space, static_cast<int>(space.dim()));
               const auto tau = random_density(mix_seed(trial_seed, 3), space, random_rank(rng, space.dim()));
               const auto rho_t = convolve(rho, tau, spec);
               const auto sigma_t = convolve(sigma, tau, spec);
               const std::string cfg = configs[c].label();
               out.add_upper(idx, cfg + ":trace_distance", trace_norm(rho_t.matrix() - sigma_t.matrix()),
                             trace_norm(rho.matrix() - sigma.matrix()), 1e-9);
               out.add_upper(idx, cfg + ":relative_entropy", relative_entropy(rho_t, sigma_t),
                             relative_entropy(rho, sigma), 1e-8);
             });
  return report;
}

ExperimentReport suite_stability(const SuiteOptions& o) {
  auto report = start("stability", o);
  const QuditSpace space(3, 1);
  const ConvolutionSpec spec(space, default_gmatrix(space.d));
  const auto states = enumerate_pure_stabilizers(space);
  report.parameters = describe(spec);
  report.parameters["pairs"] = states.size() * states.size();
  run_trials(report, states.size() * states.size(), o.jobs, [&](std::size_t idx, ExperimentReport& out) {
    const auto& rho = states[idx / states.size()];
    const auto& sigma = states[idx % states.size()];
    const bool ok = is_msps(convolve(rho, sigma, spec)).is_msps;
    out.add_upper(idx, "output_is_msps", ok ? 0.0 : 1.0, 0.0, 0.0);
  });
  return report;
}

ExperimentReport suite_min_output(const SuiteOptions& o) {
  auto report = start("min-output", o);
  const QuditSpace space(3, 1);
  const ConvolutionSpec spec(space, default_gmatrix(space.d));
  report.parameters = describe(spec);
  std::vector<StabilizerGroup> groups;
  for (const auto& g : enumerate_msps_groups(space))
    if (g.rank() == 1) groups.push_back(g);

  // Partner construction for every maximal group.
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto pair = minimal_output_pair(groups[i], spec);
    const double h = pair ? von_neumann_entropy(convolve(pair->first, pair->second, spec)) : kInf;
    report.add_upper(i, "partner_output_entropy", h, 1e-9, 0.0);
  }

  // Exhaustive scan: pure output iff the first label is the partner of the second.
  double min_mismatch = kInf;
  const std::size_t offset = groups.size();
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = 0; b < groups.size(); ++b) {
      const auto rho = msps_from_group(groups[a], space);
      const auto sigma = msps_from_group(groups[b], space);
      const double h = von_neumann_entropy(convolve(rho, sigma, spec));
      const bool related =
          direction(groups[a], space.d) == direction(partner_stabilizer_group(groups[b], spec), space.d);
      const std::size_t idx = offset + a * groups.size() + b;
      if (related) {
        report.add_upper(idx, "scan:partner_pair_pure", h, 1e-9, 0.0);
      } else {
        report.add_lower(idx, "scan:non_partner_pair_mixed", h, 1e-9, 0.0);
        min_mismatch = std::min(min_mismatch, h);
      }
    }
  }
  report.add_info(offset + groups.size() * groups.size(), "scan:min_non_partner_entropy", min_mismatch);
  return report;
}

ExperimentReport suite_holevo(const SuiteOptions& o) {
  auto report = start("holevo", o);
  const int trials = trials_or(o, 50);
  const std::vector<ConvConfig> configs{{3, 1, ConvConfig::Kind::Generic}, {7, 1, ConvConfig::Kind::BeamSplitter}};
  report.parameters = {{"trials_per_config", trials}, {"configs", describe(configs)}};
  std::vector<ConvolutionSpec> specs;
  for (const auto& c : configs) specs.push_back(c.spec());
  const QuditSpace small(3, 1);
  const auto stabilizers3 = enumerate_pure_stabilizers(small);

  const auto random_count = configs.size() * static_cast<std::size_t>(trials);
  run_trials(report, random_count, o.jobs, [&](std::size_t idx, ExperimentReport& out) {
    const std::size_t c = idx / static_cast<std::size_t>(trials);
    const auto& spec = specs[c];
    const auto& space = spec.space();
    const std::string cfg = configs[c].label();
    const auto trial_seed = mix_seed(o.seed, idx);
    Rng rng(trial_seed);
    const ConvolutionChannel chan(spec, random_density(mix_seed(trial_seed, 1), space, random_rank(rng, space.dim())));
    const auto bounds = holevo_bounds(chan);
    out.add_upper(idx, cfg + ":lower<=upper", bounds.lower, bounds.upper, 1e-9);

    std::vector<DensityMatrix> inputs{DensityMatrix::zero_ket(space), random_density(mix_seed(trial_seed, 2), space, 1)};
    if (space.d.value() == 3) inputs.insert(inputs.end(), stabilizers3.begin(), stabilizers3.end());
    double best = -kInf;
    for (const auto& rho0 : inputs) best = std::max(best, holevo_weyl_ensemble(chan, rho0));
    out.add_upper(idx, cfg + ":ensemble<=upper", best, bounds.upper, 1e-9);
  });

  // Equality branch: sigma an MSPS, some enumerated rho0 reaches the upper bound.
  std::size_t idx = random_count;
  const ConvolutionSpec spec3(small, default_gmatrix(small.d));
  for (const auto& sigma : enumerate_msps(small)) {
    const ConvolutionChannel chan(spec3, sigma);
    const auto bounds = holevo_bounds(chan);
    double best = -kInf;
    for (const auto& rho0 : stabilizers3) best = std::max(best, holevo_weyl_ensemble(chan, rho0));
    report.add_check(idx++, "msps_sigma:upper_attained", best, bounds.upper, std::abs(best - bounds.upper), 1e-9);
  }
  // Pure stabilizer sigma: both bounds equal n log d.
  for (const auto& c : configs) {
    const auto spec = c.spec();
    const double cap = spec.space().n * std::log2(static_cast<double>(spec.space().d.value()));
    for (const auto& sigma : enumerate_pure_stabilizers(spec.space())) {
      const auto bounds = holevo_bounds(ConvolutionChannel(spec, sigma));
      const double dev = std::max(std::abs(bounds.lower - cap), std::abs(bounds.upper - cap));
      report.add_check(idx++, c.label() + ":pure_stabilizer_collapse", bounds.lower, cap, dev, 1e-9);
    }
  }
  return report;
}

ExperimentReport suite_synthesis(const SuiteOptions& o) {
  auto report = start("synthesis", o);
  const int trials = trials_or(o, 100);
  report.parameters = {{"d", 2}, {"n", {1, 2}}, {"max_t", 3}, {"trials", trials}};
  run_trials(report, static_cast<std::size_t>(trials), o.jobs, [&](std::size_t i, ExperimentReport& out) {
    const int n = 1 + static_cast<int>(i % 2);
    const int n_t = static_cast<int>((i / 2) % 4);
    const QuditSpace space(2, n);
    const auto trial_seed = mix_seed(o.seed, i);
    DensityMatrix input = DensityMatrix::zero_ket(space);
    if ((i / 8) % 2 == 1) {
      Rng rng(mix_seed(trial_seed, 1));
      input = conjugate(input, random_clifford(rng, space, 6 * n));
    }
    const CMatrix V = clifford_t_circuit(mix_seed(trial_seed, 2), n, n_t);
    const double lmg_in = log_magic_gap(input);
    const double lmg_out = log_magic_gap(conjugate(input, V));
    out.add_upper(i, "n" + std::to_string(n) + ":T" + std::to_string(n_t) + ":LMG_out", lmg_out,
                  lmg_in + 0.5 * n_t, 1e-9);
  });
  return report;
}

ExperimentReport suite_duality(const SuiteOptions& o) {
  auto report = start("duality", o);
  const int trials = trials_or(o, 200);
  const std::vector<ConvConfig> configs{{3, 1, ConvConfig::Kind::Generic},
                                        {3, 2, ConvConfig::Kind::Generic},
                                        {7, 1, ConvConfig::Kind::BeamSplitter}};
  report.parameters = {{"trials_per_config", trials}, {"configs", describe(configs)}};
  std::vector<ConvolutionSpec> specs;
  for (const auto& c : configs) specs.push_back(c.spec());
  run_trials(report, configs.size() * static_cast<std::size_t>(trials), o.jobs,
             [&](std::size_t idx, ExperimentReport& out) {
               const std::size_t c = idx / static_cast<std::size_t>(trials);
               const auto& spec = specs[c];
               const auto& space = spec.space();
               const auto trial_seed = mix_seed(o.seed, idx);
               Rng rng(trial_seed);
               const auto rho = random_density(mix_seed(trial_seed, 1), space, random_rank(rng, space.dim()));
               const auto sigma = random_density(mix_seed(trial_seed, 2), space, random_rank(rng, space.dim()));
               const auto product = convolve_characteristic(char_function(rho), char_function(sigma), spec);
               const auto direct = char_function(convolve(rho, sigma, spec));
               const double dev = (product.values() - direct.values()).cwiseAbs().maxCoeff();
               // strict: deviation < 1e-10
               out.add_check(idx, configs[c].label() + ":max_deviation", dev, 1e-10, dev - 1e-10, -1e-300);
             });
  return report;
}

ExperimentReport suite_clt(const SuiteOptions& o) {
  auto report = start("clt", o);
  const int trials = trials_or(o, 50);
  const auto spec = beam_splitter_spec(7, 1);
  report.parameters = describe(spec);
  report.parameters["trials"] = trials;
  report.parameters["steps"] = o.steps;
  run_trials(report, static_cast<std::size_t>(trials), o.jobs, [&](std::size_t i, ExperimentReport& out) {
    const auto trial_seed = mix_seed(o.seed, i);
    Rng rng(trial_seed);
    const auto rho = random_density(mix_seed(trial_seed, 1), spec.space(), random_rank(rng, spec.space().dim()));
    const auto series = clt_run(rho, spec, o.steps);
    std::vector<double> previous = series.initial_entropies;
    for (const auto& s : series.steps) {
      out.add_upper(i, "N=" + std::to_string(s.step) + ":distance<=bound", s.distance, s.bound, 1e-9);
      for (std::size_t a = 0; a < series.alphas.size(); ++a) {
        out.add_lower(i, "N=" + std::to_string(s.step) + ":H_" + alpha_label(series.alphas[a]) + "_nondecreasing",
                      s.entropies[a], previous[a], 1e-8);
      }
      previous = s.entropies;
    }
    const auto slope = series.fitted_log_slope();
    if (slope && series.magic_gap > 0.0) {
      out.add_upper(i, "fitted_log_slope", *slope, std::log(1.0 - series.magic_gap), 1e-6);
    } else {
      out.add_info(i, "fitted_log_slope_unavailable", series.magic_gap);
    }
  });
  return report;
}

ExperimentReport suite_clifford_invariance(const SuiteOptions& o) {
  auto report = start("clifford-invariance", o);
  const int trials = trials_or(o, 100);
  report.parameters = {{"d", {2, 3}}, {"n", 1}, {"trials", trials}};
  run_trials(report, static_cast<std::size_t>(trials), o.jobs, [&](std::size_t i, ExperimentReport& out) {
    const QuditSpace space(i % 2 == 0 ? 2 : 3, 1);
    const auto trial_seed = mix_seed(o.seed, i);
    Rng rng(trial_seed);
    const auto rho = random_density(mix_seed(trial_seed, 1), space, random_rank(rng, space.dim()));
    const CMatrix U = random_clifford(rng, space, 12);
    const double mg = magic_gap(rho);
    const double mg_u = magic_gap(conjugate(rho, U));
    const std::string tag = "d" + std::to_string(space.d.value());
    out.add_check(i, tag + ":MG_invariant", mg_u, mg, std::abs(mg_u - mg), 1e-9);
    if (const auto ub = magic_gap_upper_bound(rho)) out.add_info(i, tag + ":MG_vs_purity_bound", mg, *ub);
  });
  return report;
}

std::vector<std::string> suite_names() {
  return {"extremality", "entropy",   "fisher",  "monotonicity", "stability",          "min-output",
          "holevo",      "synthesis", "duality", "clt",          "clifford-invariance"};
}

ExperimentReport run_suite(const std::string& name, const SuiteOptions& options) {
  static const std::map<std::string, ExperimentReport (*)(const SuiteOptions&)> table{
      {"extremality", &suite_extremality}, {"entropy", &suite_entropy},
      {"fisher", &suite_fisher},           {"monotonicity", &suite_monotonicity},
      {"stability", &suite_stability},     {"min-output", &suite_min_output},
      {"holevo", &suite_holevo},           {"synthesis", &suite_synthesis},
      {"duality", &suite_duality},         {"clt", &suite_clt},
      {"clifford-invariance", &suite_clifford_invariance}};
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::ParseError, "unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  auto report = it->second(options);
  report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace qconv
