#include "qconv/state_io.hpp"

#include "qconv/errors.hpp"

namespace qconv {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (j.contains(key)) return j.at(key);
  if (j.contains("payload") && j.at("payload").is_object() && j.at("payload").contains(key)) {
    return j.at("payload").at(key);
  }
  parse_fail(std::string("missing field '") + key + "'");
}

bool has_field(const json& j, const char* key) {
  return j.contains(key) || (j.contains("payload") && j.at("payload").is_object() && j.at("payload").contains(key));
}

int get_int(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) parse_fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

// Flattens a flat or nested numeric array.
std::vector<double> numbers(const json& v, const char* key) {
  std::vector<double> out;
  auto push = [&](const json& x) {
    if (!x.is_number()) parse_fail(std::string("field '") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  };
  if (!v.is_array()) parse_fail(std::string("field '") + key + "' must be an array");
  for (const auto& x : v) {
    if (x.is_array()) {
      for (const auto& y : x) push(y);
    } else {
      push(x);
    }
  }
  return out;
}

Eigen::VectorXcd complex_payload(const json& j, Eigen::Index expected) {
  const auto re = numbers(field(j, "re"), "re");
  std::vector<double> im(re.size(), 0.0);
  if (has_field(j, "im")) im = numbers(field(j, "im"), "im");
  if (re.size() != static_cast<std::size_t>(expected) || im.size() != re.size()) {
    parse_fail("expected " + std::to_string(expected) + " entries in 're'/'im', got " + std::to_string(re.size()) +
               "/" + std::to_string(im.size()));
  }
  Eigen::VectorXcd v(expected);
  for (Eigen::Index i = 0; i < expected; ++i) v(i) = cplx(re[i], im[i]);
  return v;
}

ZVector int_list(const json& v) {
  if (!v.is_array()) parse_fail("expected an integer array");
  ZVector out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) parse_fail("expected an integer array");
    out.push_back(x.get<int>());
  }
  return out;
}

PhasePoint point_from_json(const json& v, const QuditSpace& space) {
  const PhaseSpace ps(space);
  const auto n = static_cast<std::size_t>(space.n);
  if (v.is_object()) {
    auto p = int_list(v.at("p"));
    auto q = int_list(v.at("q"));
    if (p.size() != n || q.size() != n) parse_fail("generator label must have n entries in p and q");
    p.insert(p.end(), q.begin(), q.end());
    return ps.from_flat(p);
  }
  auto flat = int_list(v);
  if (flat.size() != 2 * n) parse_fail("flat generator label must have 2n entries");
  return ps.from_flat(flat);
}

std::uint64_t require_seed(std::optional<std::uint64_t> seed, const std::string& name) {
  if (!seed) parse_fail("preset '" + name + "' needs a seed");
  return *seed;
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

DensityMatrix preset_state(const std::string& name, int d, int n, std::optional<std::uint64_t> seed) {
  if (name == "t-state") {
    if (d != 2 || n != 1) parse_fail("preset 't-state' is defined for d = 2, n = 1");
    return t_state();
  }
  const QuditSpace space(d, n);
  if (name == "maximally-mixed") return DensityMatrix::maximally_mixed(space);
  if (name == "zero-ket") return DensityMatrix::zero_ket(space);
  if (name == "random-pure") return random_density(require_seed(seed, name), space, 1);
  if (name == "random-mixed") {
    return random_density(require_seed(seed, name), space, static_cast<int>(space.dim()));
  }
  parse_fail("unknown preset '" + name + "'");
}

DensityMatrix state_from_json(const json& j, std::optional<std::uint64_t> seed) {
  if (!j.is_object()) parse_fail("state must be a JSON object");
  try {
    const int d = get_int(j, "d");
    const int n = get_int(j, "n");
    if (n < 1) parse_fail("n must be positive");
    const auto& kind_v = field(j, "kind");
    if (!kind_v.is_string()) parse_fail("field 'kind' must be a string");
    const auto kind = kind_v.get<std::string>();
    if (kind == "preset") {
      const char* key = has_field(j, "name") ? "name" : "preset";
      return preset_state(field(j, key).get<std::string>(), d, n, seed);
    }
    const QuditSpace space(d, n);
    if (kind == "dense") {
      const auto v = complex_payload(j, space.dim() * space.dim());
      CMatrix m(space.dim(), space.dim());
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = v(r * m.cols() + c);
      return DensityMatrix(space, std::move(m));
    }
    if (kind == "char") {
      const CharFunction xi(space, complex_payload(j, space.phase_space_size()));
      return DensityMatrix(space, inverse_char(xi));
    }
    if (kind == "msps") {
      StabilizerGroup group;
      for (const auto& g : field(j, "generators")) group.generators.push_back(point_from_json(g, space));
      group.phases = has_field(j, "phases") ? int_list(field(j, "phases")) : ZVector(group.generators.size(), 0);
      return msps_from_group(group, space);
    }
    parse_fail("unknown state kind '" + kind + "'");
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json state_to_json(const DensityMatrix& rho) {
  std::vector<double> re, im;
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return {{"d", rho.d()}, {"n", rho.n()}, {"kind", "dense"}, {"re", re}, {"im", im}};
}

json char_to_json(const CharFunction& xi) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    re.push_back(xi[i].real());
    im.push_back(xi[i].imag());
  }
  return {{"d", xi.space().d.value()}, {"n", xi.space().n}, {"kind", "char"}, {"re", re}, {"im", im}};
}

json phase_point_to_json(const PhasePoint& x) { return {{"p", x.p}, {"q", x.q}}; }

json group_to_json(const StabilizerGroup& group) {
  auto gens = json::array();
  for (const auto& g : group.generators) gens.push_back(phase_point_to_json(g));
  return {{"generators", gens}, {"phases", group.phases}};
}

ConvolutionSpec spec_from_json(const json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int n = j.at("n").get<int>();
    const auto& G = j.at("G");
    if (!G.is_array() || G.size() != 2 || G[0].size() != 2 || G[1].size() != 2) parse_fail("G must be 2x2");
    require_convolution_dimension(d);
    const PrimeModulus m(d);
    return ConvolutionSpec(QuditSpace(d, n), GMatrix(G[0][0].get<int>(), G[0][1].get<int>(), G[1][0].get<int>(),
                                                     G[1][1].get<int>(), m));
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json spec_to_json(const ConvolutionSpec& spec) {
  const auto& G = spec.G();
  return {{"d", spec.space().d.value()}, {"n", spec.space().n}, {"G", {{G.g00(), G.g01()}, {G.g10(), G.g11()}}}};
}

}  // namespace qconv
