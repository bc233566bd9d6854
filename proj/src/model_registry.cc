#include "sdis/model_registry.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "sdis/benchmarks.h"
#include "sdis/error.h"
#include "sdis/special_functions.h"

namespace sdis {

namespace {

bool is_parameterized(const std::string& name) {
  return name == "linear_sum" || name == "series_two_sided";
}

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("model id: bad value '" + std::string(text) + "' for '" + std::string(key) + "'");
  }
  return value;
}

}  // namespace

const std::vector<ModelInfo>& registered_models() {
  static const std::vector<ModelInfo> models = {
      {"four_branch", "2-D series system with four branches, reference Pf 1.058e-5", false},
      {"two_region", "2-D series system with two distinct failure regions, reference Pf 1.10e-8", false},
      {"oscillator", "6-D nonlinear oscillator with normal inputs, reference Pf 6.43e-6", false},
      {"linear_sum", "n-D linear limit state beta - sum(u)/sqrt(n), Pf = Phi(-beta)", true},
      {"series_two_sided", "n-D series of two opposite linear limit states, Pf = 2 Phi(-beta)", true},
  };
  return models;
}

ModelId ModelId::parse(std::string_view id) {
  ModelId out;
  const auto colon = id.find(':');
  out.name = std::string(id.substr(0, colon));
  bool known = false;
  for (const auto& m : registered_models()) known = known || m.name == out.name;
  if (!known) throw ConfigError("unknown model '" + out.name + "'");

  const bool param = is_parameterized(out.name);
  if (param) {
    out.n = 10;
    out.beta = 4.0;
  }
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  while (!rest.empty()) {
    const auto next = rest.find(':');
    const std::string_view item = rest.substr(0, next);
    rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ConfigError("model id: expected key=value, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (!param) throw ConfigError("model '" + out.name + "' takes no parameters");
    if (key == "n") {
      const double n = parse_number(key, value);
      if (n < 1 || n != std::floor(n)) throw ConfigError("model id: n must be a positive integer");
      out.n = static_cast<int>(n);
    } else if (key == "beta") {
      out.beta = parse_number(key, value);
    } else {
      throw ConfigError("model id: unknown parameter '" + std::string(key) + "'");
    }
  }
  return out;
}

std::string ModelId::canonical() const {
  if (!is_parameterized(name)) return name;
  std::ostringstream os;
  os << name << ":n=" << n << ":beta=" << beta;
  return os.str();
}

std::unique_ptr<LimitState> make_model(std::string_view id) {
  const ModelId m = ModelId::parse(id);
  if (m.name == "four_branch") return std::make_unique<FourBranch>();
  if (m.name == "two_region") return std::make_unique<TwoRegion>();
  if (m.name == "oscillator") return std::make_unique<Oscillator>();
  if (m.name == "linear_sum") return std::make_unique<LinearSum>(m.n, m.beta);
  return std::make_unique<SeriesTwoSided>(m.n, m.beta);
}

std::optional<double> reference_pf(std::string_view id) {
  const ModelId m = ModelId::parse(id);
  if (m.name == "four_branch") return 1.058e-5;
  if (m.name == "two_region") return 1.10e-8;
  if (m.name == "oscillator") return 6.43e-6;
  if (m.name == "linear_sum") return std_normal_cdf(-m.beta);
  if (m.name == "series_two_sided") return 2.0 * std_normal_cdf(-m.beta);
  return std::nullopt;
}

}  // namespace sdis
