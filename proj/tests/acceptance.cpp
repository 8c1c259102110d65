// Acceptance run: one PASS/FAIL line per criterion. argv[1] is the CLI binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "oracles.hpp"
#include "qconv/experiments.hpp"
#include "qconv/random.hpp"

using namespace qconv;

namespace {

constexpr std::uint64_t kSeed = 20240611;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

struct Timed {
  ExperimentReport report;
  double seconds;
};

Timed timed_suite(const std::string& name, int trials, int steps = 30) {
  SuiteOptions o;
  o.seed = kSeed;
  o.trials = trials;
  o.steps = steps;
  const auto t0 = std::chrono::steady_clock::now();
  auto r = run_suite(name, o);
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

std::string summary(const ExperimentReport& r, double seconds) {
  std::size_t checked = 0;
  for (const auto& rec : r.records)
    if (!rec.informational) ++checked;
  return std::to_string(checked) + " checks, " + std::to_string(r.violations) + " violations, max violation " +
         format_double(r.max_violation) + ", " + seconds_text(seconds);
}

// Records whose metric contains `needle`.
ExperimentReport filtered(const ExperimentReport& r, const std::string& needle, bool keep) {
  ExperimentReport out;
  std::vector<ReportRecord> recs;
  for (const auto& rec : r.records)
    if ((rec.metric.find(needle) != std::string::npos) == keep) recs.push_back(rec);
  out.append(recs);
  return out;
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-qconv>\n";
    return 2;
  }
  const std::string cli = argv[1];

  {
    const auto t = timed_suite("duality", 200);
    report(1, "duality", t.report.pass && t.seconds < 30.0, summary(t.report, t.seconds) + " (limit 30 s)");
  }
  {
    const auto t = timed_suite("entropy", 100);
    report(2, "entropy increase", t.report.pass && t.seconds < 60.0, summary(t.report, t.seconds) + " (limit 60 s)");
  }
  {
    const auto t = timed_suite("fisher", 100);
    int fd_cases = 0;
    double fd_worst = 0.0;
    for (int d : {3, 7}) {
      const QuditSpace s(d, 1);
      const auto gens = fisher_generators(s);
      for (int k = 0; k < 10; ++k) {
        const auto rho = random_density(mix_seed(kSeed, 1000 + 10 * d + k), s, d);
        const auto& H = gens[static_cast<std::size_t>((k * 3) % (2 * d))];
        fd_worst = std::max(fd_worst, std::abs(fisher_information(rho, H) - oracle::fisher_fd(rho.matrix(), H)));
        ++fd_cases;
      }
    }
    report(3, "Fisher decrease", t.report.pass && fd_cases == 20 && fd_worst < 1e-4,
           summary(t.report, t.seconds) + "; finite-difference cases " + std::to_string(fd_cases) +
               ", worst deviation " + format_double(fd_worst));
  }
  {
    const auto t = timed_suite("extremality", 50);
    report(4, "MSPS extremality", t.report.pass, summary(t.report, t.seconds));
  }
  {
    const auto t = timed_suite("stability", 0);
    report(5, "convolutional stability", t.report.pass && t.report.records.size() == 144,
           summary(t.report, t.seconds));
  }
  {
    const auto t = timed_suite("min-output", 0);
    report(6, "minimal output entropy", t.report.pass, summary(t.report, t.seconds));
  }
  {
    const auto t = timed_suite("holevo", 50);
    report(7, "Holevo sandwich", t.report.pass, summary(t.report, t.seconds));
  }
  {
    const auto t = timed_suite("clt", 50, 30);
    const auto decay = filtered(t.report, "nondecreasing", false);
    const auto second_law = filtered(t.report, "nondecreasing", true);
    report(8, "CLT decay", decay.pass && t.seconds < 120.0, summary(decay, t.seconds) + " (limit 120 s)");
    report(9, "second law", second_law.pass && !second_law.records.empty(), summary(second_law, t.seconds));
  }
  {
    const auto t = timed_suite("monotonicity", 100);
    report(10, "monotonicity", t.report.pass, summary(t.report, t.seconds));
  }
  {
    const auto t = timed_suite("synthesis", 100);
    report(11, "T-gate synthesis bound", t.report.pass, summary(t.report, t.seconds));
  }
  {
    double roundtrip = 0.0, parseval = 0.0;
    for (auto [d, n] : {std::pair{3, 1}, {3, 2}, {7, 1}}) {
      const QuditSpace s(d, n);
      for (int k = 0; k < 20; ++k) {
        const auto rho = random_density(mix_seed(kSeed, 2000 + k), s, 1 + k % static_cast<int>(s.dim()));
        const auto xi = char_function(rho);
        roundtrip = std::max(roundtrip, (inverse_char(xi) - rho.matrix()).cwiseAbs().maxCoeff());
        parseval = std::max(parseval, std::abs(rho.matrix().squaredNorm() -
                                               xi.values().squaredNorm() / static_cast<double>(s.dim())));
      }
    }
    bool keys = true;
    for (const auto& spec : {ConvolutionSpec(QuditSpace(3, 1), default_gmatrix(PrimeModulus(3))),
                             ConvolutionSpec(QuditSpace(3, 2), default_gmatrix(PrimeModulus(3))),
                             beam_splitter_spec(7, 1), amplifier_spec(7, 1)}) {
      keys = keys && is_clifford(key_unitary(spec), QuditSpace(spec.space().d, 2 * spec.space().n));
    }
    const auto inv = timed_suite("clifford-invariance", 100);

    const std::string clt_cmd = "'" + cli + "' clt --d 7 --n 1 --steps 30 --seed 7 --preset random-pure";
    const std::string suite_cmd = "'" + cli + "' suite entropy --seed 5 --trials 5 --format csv 2>/dev/null";
    const std::string suite_jobs = "'" + cli + "' suite entropy --seed 5 --trials 5 --format csv --jobs 4 2>/dev/null";
    int s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
    const auto c1 = capture(clt_cmd, s1), c2 = capture(clt_cmd, s2);
    const auto u1 = capture(suite_cmd, s3), u2 = capture(suite_cmd, s4), u3 = capture(suite_jobs, s5);
    const bool identical = s1 == 0 && s2 == 0 && s3 == 0 && s4 == 0 && s5 == 0 && !c1.empty() && c1 == c2 &&
                           !u1.empty() && u1 == u2 && u1 == u3;

    const bool ok = roundtrip < 1e-10 && parseval < 1e-9 && keys && inv.report.pass && identical;
    report(12, "infrastructure", ok,
           "round-trip " + format_double(roundtrip) + ", Parseval " + format_double(parseval) + ", key unitaries " +
               (keys ? "Clifford" : "NOT Clifford") + ", MG invariance max violation " +
               format_double(inv.report.max_violation) + ", CLI outputs " +
               (identical ? "byte-identical" : "DIFFER"));
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
