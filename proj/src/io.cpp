#include "entkit/io.hpp"

#include <nlohmann/json.hpp>

#include "entkit/constructions.hpp"
#include "entkit/states.hpp"

namespace entkit {

Json operator_to_json(const HermitianOperator& op) {
  Json j;
  j["dims"] = op.dims();
  Json data = Json::array();
  const int n = op.side();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      data.push_back({op.mat()(i, k).real(), op.mat()(i, k).imag()});
  j["data"] = std::move(data);
  return j;
}

HermitianOperator operator_from_json(const Json& j) {
  const std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  const FactorIndexer idx(dims);
  const int n = idx.side();
  const Json& data = j.at("data");
  if (static_cast<int>(data.size()) != n * n)
    throw std::invalid_argument("data length must equal side length squared");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Json& cell = data[i * n + k];
      m(i, k) = Cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  return HermitianOperator(std::move(m), dims);
}

Json channel_to_json(const Channel& ch) {
  Json j = operator_to_json(ch.choi);
  Json meta;
  meta["in_dims"] = ch.in_dims;
  meta["out_dims"] = ch.out_dims;
  meta["bipartition"] = {{"out_a", ch.out_a}, {"in_a", ch.in_a}};
  j["metadata"] = std::move(meta);
  return j;
}

Channel channel_from_json(const Json& j) {
  HermitianOperator choi = operator_from_json(j);
  const Json& meta = j.at("metadata");
  Channel ch{std::move(choi),
             meta.at("in_dims").get<std::vector<int>>(),
             meta.at("out_dims").get<std::vector<int>>(),
             meta.at("bipartition").at("out_a").get<std::vector<int>>(),
             meta.at("bipartition").at("in_a").get<std::vector<int>>()};
  std::vector<int> expect = ch.out_dims;
  expect.insert(expect.end(), ch.in_dims.begin(), ch.in_dims.end());
  if (ch.choi.dims() != expect)
    throw std::invalid_argument("choi dims must equal out_dims ++ in_dims");
  return ch;
}

namespace {

// Splits on `sep` at paren depth zero.
std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

}  // namespace

ObjectSpec parse_object_spec(const std::string& text) {
  ObjectSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw std::invalid_argument("empty spec name");
  if (colon == std::string::npos) return spec;
  for (const std::string& part :
       split_top_level(text.substr(colon + 1), ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec arguments must be key=value: " + part);
    spec.args[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return spec;
}

double ObjectSpec::number(const std::string& key) const {
  const auto it = args.find(key);
  if (it == args.end())
    throw std::invalid_argument("spec " + name + " missing argument " + key);
  return std::stod(it->second);
}

double ObjectSpec::number(const std::string& key, double fallback) const {
  const auto it = args.find(key);
  return it == args.end() ? fallback : std::stod(it->second);
}

int ObjectSpec::integer(const std::string& key) const {
  return static_cast<int>(number(key));
}

int ObjectSpec::integer(const std::string& key, int fallback) const {
  const auto it = args.find(key);
  return it == args.end() ? fallback : static_cast<int>(std::stod(it->second));
}

namespace {

SchmidtVector coefficients_from_arg(const std::string& text) {
  std::vector<double> coeffs;
  for (const std::string& part : split_top_level(text, ';'))
    coeffs.push_back(std::stod(part));
  return SchmidtVector(std::move(coeffs));
}

// Nested specs use ';' in place of ',' inside parentheses.
std::string unnest(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return text;
  if (text.back() != ')') throw std::invalid_argument("unbalanced spec: " + text);
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  for (char& c : inner)
    if (c == ';') c = ',';
  return text.substr(0, open) + ":" + inner;
}

}  // namespace

HermitianOperator state_from_spec(const std::string& text) {
  const ObjectSpec spec = parse_object_spec(text);
  if (spec.name == "maxent")
    return max_entangled(spec.integer("d")).density();
  if (spec.name == "flip") return flip_operator(spec.integer("d"));
  if (spec.name == "werner")
    return werner(spec.integer("d"), spec.number("beta"));
  if (spec.name == "smolin") return smolin();
  if (spec.name == "isotropic")
    return isotropic(spec.integer("d"), spec.number("a"));
  if (spec.name == "ghz")
    return ghz(spec.integer("n", 3), spec.integer("r", 2)).density();
  if (spec.name == "w") return w_state().density();
  if (spec.name == "pure_schmidt") {
    const auto it = spec.args.find("coeffs");
    if (it == spec.args.end())
      throw std::invalid_argument("pure_schmidt needs coeffs=a;b;...");
    return pure_from_schmidt(coefficients_from_arg(it->second)).density();
  }
  throw std::invalid_argument("unknown state spec: " + spec.name);
}

Channel channel_from_spec(const std::string& text) {
  const ObjectSpec spec = parse_object_spec(text);
  if (spec.name == "identity") {
    const int d = spec.integer("d", 2);
    return identity_channel({d, d});
  }
  if (spec.name == "superactivation") return superactivation().channel;
  if (spec.name == "ppt_negativity")
    return ppt_preserving_negativity_channel(spec.integer("d", 4)).channel;
  if (spec.name == "dne_schmidt")
    return thm_dne_schmidt(spec.integer("k", 2), spec.integer("d", 3)).channel;
  if (spec.name == "kne")
    return k_ne_channel(spec.integer("d", 4), spec.integer("k", 2),
                        spec.number("beta", 1.0))
        .channel;
  if (spec.name == "maxent_to_pure") {
    const auto it = spec.args.find("coeffs");
    if (it == spec.args.end())
      throw std::invalid_argument("maxent_to_pure needs coeffs=a;b;...");
    return thm_maxent_to_pure(spec.integer("k", 2),
                              coefficients_from_arg(it->second))
        .channel;
  }
  if (spec.name == "witness_channel") {
    const auto it = spec.args.find("state");
    if (it == spec.args.end())
      throw std::invalid_argument(
          "witness_channel needs state=<nested spec>, e.g. "
          "state=werner(d=3;beta=1.0)");
    const HermitianOperator rho = state_from_spec(unnest(it->second));
    Witness w = witness_from_npt(rho, Bipartition{{0}});
    return witness_channel(w).channel;
  }
  throw std::invalid_argument("unknown channel spec: " + spec.name);
}

}  // namespace entkit
