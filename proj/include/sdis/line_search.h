#pragma once

/// Root of G(sigma * r * a) = 0 along a direction a, and the cross-level
/// root rescaling identity.

#include <optional>

#include "sdis/limit_state.h"
#include "sdis/types.h"

namespace sdis {

struct RootQuery {
  /// Unit direction in u-space.
  Vector direction;
  /// Magnification factor, >= 1.
  double sigma = 1.0;
  /// A radius with G(sigma * r_hint * a) <= 0. Bracketing starts from
  /// [0, r_hint] when given, otherwise the radius is grown geometrically.
  std::optional<double> r_hint;
  /// Known value of G(sigma * r_hint * a); saves one evaluation.
  std::optional<double> g_hint;
  /// Known value of G(0); saves one evaluation.
  std::optional<double> g_origin;
};

struct RootOptions {
  /// Relative bracket-width tolerance.
  double r_tol = 1e-8;
  /// Absolute g tolerance is g_tol_scale * (1 + |G(0)|).
  double g_tol_scale = 1e-10;
  int max_iterations = 200;
  /// Search radius when no hint is given.
  double r_max = 12.0;
};

struct Root {
  /// Best root estimate.
  double r = 0.0;
  /// Final bracket: G(sigma r_safe a) > 0 >= G(sigma r_fail a).
  double r_safe = 0.0;
  double r_fail = 0.0;
  double g_fail = 0.0;
  /// Limit-state evaluations spent on this query.
  int evaluations = 0;
};

/// Finds the root along q.direction by Brent's method on a sign-change
/// bracket. Without a hint the radius grows by factors of two from 1 up to
/// options.r_max and the first crossing from safe to fail is refined.
///
/// Throws UnsafeOrigin when G(0) <= 0 and NoRootFound when no sign change
/// exists up to r_max.
Root find_root(const LimitState& lsf, const RootQuery& q, const RootOptions& options = {});

/// As find_root, but a safe direction yields std::nullopt instead of
/// NoRootFound.
std::optional<Root> try_find_root(const LimitState& lsf, const RootQuery& q,
                                  const RootOptions& options = {});

/// r_next = r * sigma / sigma_next: the same boundary point seen at a smaller
/// magnification. Requires 1 <= sigma_next <= sigma and r > 0.
double rescale_root(double r, double sigma, double sigma_next);

}  // namespace sdis
