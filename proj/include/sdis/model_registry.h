#pragma once

/// Named registry of benchmark models.
///
/// A model id is a base name optionally followed by `:key=value` parameters,
/// e.g. `four_branch`, `linear_sum:n=100:beta=4`. Parameterized models accept
/// `n` (dimension, default 10) and `beta` (reliability index, default 4).

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdis/limit_state.h"

namespace sdis {

struct ModelInfo {
  std::string name;
  std::string description;
  bool parameterized;
};

/// Parsed model id; `canonical()` re-renders it with every parameter explicit.
struct ModelId {
  std::string name;
  int n = 0;
  double beta = 0.0;

  static ModelId parse(std::string_view id);
  std::string canonical() const;
};

/// Fresh model instance (with its own evaluation counter). Throws ConfigError
/// for an unknown name, unknown parameter or malformed value.
std::unique_ptr<LimitState> make_model(std::string_view id);

/// Reference failure probability: analytic for the linear models, the
/// large-sample Monte Carlo reference value otherwise.
std::optional<double> reference_pf(std::string_view id);

const std::vector<ModelInfo>& registered_models();

}  // namespace sdis
