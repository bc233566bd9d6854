#pragma once

/// Primitive samplers in standard-normal space.

#include "sdis/rng.h"
#include "sdis/types.h"

namespace sdis {

/// n independent standard normal variates.
Vector sample_std_normal(int n, Rng& rng);

/// Uniform point on the unit sphere S^{n-1}, obtained by normalizing a
/// standard normal draw.
Vector sample_uniform_direction(int n, Rng& rng);

/// Radius r >= r_min whose square is chi-square(n) conditioned on
/// r^2 > r_min^2.
///
/// Inverse CDF in the upper tail: with Q0 = 1 - F(r_min^2) and u uniform on
/// (0, 1), returns sqrt(Q^{-1}(u * Q0)). Everything is carried in log scale,
/// so Q0 may lie far below the double range. For fixed r_min the map from u
/// to r is monotone (decreasing).
double truncated_chi_from_uniform(int n, double r_min, double u);
double sample_truncated_chi(int n, double r_min, Rng& rng);

}  // namespace sdis
