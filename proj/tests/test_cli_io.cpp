#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qconv/cli.hpp"
#include "qconv/errors.hpp"
#include "qconv/state_io.hpp"

using namespace qconv;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qconv_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("state schema") {
    const auto rho = random_density(5, QuditSpace(3, 2), 3);
    const auto back = state_from_json(state_to_json(rho));
    CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);

    const auto via_char = state_from_json(char_to_json(char_function(rho)));
    CHECK((via_char.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-10);

    const auto nested = state_from_json(nlohmann::json::parse(
        R"({"d": 2, "n": 1, "kind": "dense", "payload": {"re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}})"));
    CHECK(nested.matrix()(0, 0) == cplx(1.0));

    const auto msps = state_from_json(nlohmann::json::parse(
        R"({"d": 3, "n": 1, "kind": "msps", "generators": [{"p": [1], "q": [0]}], "phases": [0]})"));
    CHECK((msps.matrix() - DensityMatrix::zero_ket(QuditSpace(3, 1)).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const auto flat = state_from_json(
        nlohmann::json::parse(R"({"d": 3, "n": 1, "kind": "msps", "generators": [[1, 0]], "phases": [0]})"));
    CHECK((flat.matrix() - msps.matrix()).cwiseAbs().maxCoeff() == 0.0);

    CHECK(state_from_json(nlohmann::json::parse(R"({"d": 2, "n": 1, "kind": "preset", "name": "t-state"})"))
              .purity() == doctest::Approx(1.0));
    CHECK_THROWS_AS(preset_state("random-pure", 3, 1), Error);
    CHECK((preset_state("random-pure", 3, 1, 4).matrix() - preset_state("random-pure", 3, 1, 4).matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);

    for (const char* bad : {R"({"d": 3, "n": 1})", R"({"d": 3, "n": 1, "kind": "dense", "re": [1, 0]})",
                            R"({"d": 3, "n": 1, "kind": "weird"})", R"({"d": "3", "n": 1, "kind": "dense"})",
                            R"([1, 2])"}) {
      try {
        state_from_json(nlohmann::json::parse(bad));
        FAIL("accepted ", bad);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
      }
    }
    CHECK_THROWS_AS(parse_json_text("{not json"), Error);

    const auto spec = beam_splitter_spec(7, 1);
    const auto spec2 = spec_from_json(spec_to_json(spec));
    CHECK(spec2.G().g11() == 5);
  }

  TEST_CASE("gap command") {
    const auto mixed = run_cli({"gap", "--d", "3", "--preset", "maximally-mixed"});
    REQUIRE(mixed.code == 0);
    const auto j = nlohmann::json::parse(mixed.out);
    CHECK(j["magic_gap"].get<double>() == 0.0);
    CHECK(j["pauli_rank"].get<int>() == 1);
    CHECK(j["is_msps"].get<bool>());

    const auto t = nlohmann::json::parse(run_cli({"gap", "--d", "2", "--preset", "t-state"}).out);
    CHECK(t["magic_gap"].get<double>() == doctest::Approx(0.29289321881345254));
    CHECK(t["log_magic_gap"].get<double>() == doctest::Approx(0.5));

    const auto dense = scratch("dense.json");
    {
      std::ofstream f(dense);
      f << state_to_json(random_density(2, QuditSpace(3, 1), 2)).dump();
    }
    const auto chr = scratch("char.json");
    REQUIRE(run_cli({"gap", "--state", dense.string(), "--emit-char", "--out", chr.string()}).code == 0);
    const auto a = state_from_json(parse_json_text(slurp(dense)));
    const auto b = state_from_json(parse_json_text(slurp(chr)));
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("convolve command") {
    const auto r = run_cli({"convolve", "--d", "3", "--a-preset", "zero-ket", "--b-preset", "zero-ket"});
    REQUIRE(r.code == 0);
    const auto out = state_from_json(parse_json_text(r.out));
    CHECK((out.matrix() - DensityMatrix::zero_ket(QuditSpace(3, 1)).matrix()).cwiseAbs().maxCoeff() < 1e-12);

    const auto dual = run_cli({"convolve", "--d", "7", "--spec", "beam-splitter", "--seed", "1", "--a-preset",
                               "random-mixed", "--b-preset", "random-pure", "--check-duality"});
    CHECK(dual.code == 0);
    CHECK(dual.err.find("duality_max_deviation") != std::string::npos);

    const auto qubit = run_cli({"convolve", "--d", "2", "--a-preset", "zero-ket", "--b-preset", "zero-ket"});
    CHECK(qubit.code == cli::kParseError);
    CHECK(qubit.err.find("UnsupportedDimension") != std::string::npos);
    CHECK(run_cli({"convolve", "--d", "5", "--spec", "amplifier", "--a-preset", "zero-ket", "--b-preset",
                   "zero-ket"})
              .code == cli::kParseError);
    CHECK(run_cli({"convolve", "--d", "3", "--G", "1,1,1,1", "--a-preset", "zero-ket", "--b-preset", "zero-ket"})
              .code == cli::kNumericError);
  }

  TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == cli::kParseError);
    CHECK(run_cli({"bogus"}).code == cli::kParseError);
    CHECK(run_cli({"clt", "--d", "7", "--preset", "random-pure"}).code == cli::kParseError);
    CHECK(run_cli({"gap", "--d", "3", "--preset", "random-pure"}).code == cli::kParseError);
    CHECK(run_cli({"gap", "--d", "4", "--preset", "zero-ket"}).code == cli::kParseError);
    CHECK(run_cli({"suite", "stability", "--d", "3"}).code == cli::kPass);
    CHECK(run_cli({"suite", "stability", "--d", "7"}).code == cli::kParseError);
    CHECK(run_cli({"suite", "entropy"}).code == cli::kParseError);
    const auto bad = scratch("bad_state.json");
    {
      std::ofstream f(bad);
      f << R"({"d": 3, "n": 1, "kind": "dense", "re": [1,0,0, 0,1,0, 0,0,1]})";
    }
    const auto r = run_cli({"gap", "--state", bad.string()});
    CHECK(r.code == cli::kNumericError);
    CHECK(r.err.find("trace defect") != std::string::npos);
  }

  TEST_CASE("clt command is byte-identical across runs") {
    const std::vector<std::string> args{"clt", "--d", "7", "--n", "1", "--steps", "30", "--seed", "7", "--preset",
                                        "random-pure"};
    const auto a = run_cli(args), b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "step,distance,bound,H_0.5,H_1,H_2,H_inf");
    int rows = 0;
    while (std::getline(lines, line)) {
      ++rows;
      std::stringstream row(line);
      std::string step, dist, bound;
      std::getline(row, step, ',');
      std::getline(row, dist, ',');
      std::getline(row, bound, ',');
      CHECK(std::stod(dist) <= std::stod(bound) + 1e-9);
    }
    CHECK(rows == 30);
    auto other = args;
    other[8] = "8";
    CHECK(run_cli(other).out != a.out);
  }

  TEST_CASE("suite output files") {
    const auto path = scratch("suite.csv");
    fs::remove(path);
    const auto r = run_cli({"suite", "duality", "--seed", "2", "--trials", "3", "--format", "csv", "--out",
                            path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto text = slurp(path);
    CHECK(text.rfind("suite,seed,index,metric,value,bound,pass\n", 0) == 0);
    for (const auto& entry : fs::directory_iterator(path.parent_path()))
      CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
    const auto j1 = run_cli({"suite", "clt", "--seed", "4", "--trials", "2", "--steps", "5"});
    const auto j2 = run_cli({"suite", "clt", "--seed", "4", "--trials", "2", "--steps", "5", "--jobs", "2"});
    CHECK(j1.out == j2.out);
  }

  TEST_CASE("enumerate and capacity commands") {
    const auto e = nlohmann::json::parse(run_cli({"enumerate", "msps", "--d", "3"}).out);
    CHECK(e.size() == 13);
    const auto s = nlohmann::json::parse(run_cli({"enumerate", "stabilizers", "--d", "2"}).out);
    CHECK(s.size() == 6);
    const auto c = run_cli({"capacity-bounds", "--d", "3", "--preset", "zero-ket", "--ensemble-preset", "zero-ket"});
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["lower"].get<double>() == doctest::Approx(std::log2(3.0)));
    CHECK(j["upper"].get<double>() == doctest::Approx(std::log2(3.0)));
  }
}
