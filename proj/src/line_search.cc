#include "sdis/line_search.h"

#include <cmath>
#include <limits>
#include <string>

#include "sdis/error.h"

namespace sdis {

namespace {

struct Bracket {
  double lo, g_lo;  // safe end, g > 0
  double hi, g_hi;  // fail end, g <= 0
};

/// Brent's method on a bracket with g(lo) > 0 >= g(hi).
template <class F>
Root brent(F&& g, Bracket br, double g_tol, const RootOptions& opt) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  Root out;
  double a = br.lo, fa = br.g_lo;
  double b = br.hi, fb = br.g_hi;
  double c = b, fc = fb;
  double d = b - a, e = d;
  auto finish = [&] {
    out.r = b;
    if (fb <= 0.0) {
      out.r_fail = b;
      out.g_fail = fb;
      out.r_safe = c;
    } else {
      out.r_fail = c;
      out.g_fail = fc;
      out.r_safe = b;
    }
    return out;
  };
  if (std::abs(fb) <= g_tol) {
    c = a;
    fc = fa;
    return finish();
  }
  for (int it = 0; it < opt.max_iterations; ++it) {
    if ((fb > 0.0 && fc > 0.0) || (fb <= 0.0 && fc <= 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * opt.r_tol * std::max(1.0, std::abs(b));
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || std::abs(fb) <= g_tol) return finish();
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = g(b);
    ++out.evaluations;
  }
  return finish();
}

std::optional<Root> search(const LimitState& lsf, const RootQuery& q, const RootOptions& opt) {
  if (q.direction.size() != lsf.dimension()) {
    throw DimensionMismatch("find_root: direction length " + std::to_string(q.direction.size()) +
                            " does not match model dimension " + std::to_string(lsf.dimension()));
  }
  if (!(q.sigma >= 1.0)) throw DomainError("find_root: sigma must be >= 1");
  int evals = 0;
  auto g = [&](double r) { return lsf.evaluate_scaled(q.sigma * r, q.direction); };

  double g0;
  if (q.g_origin) {
    g0 = *q.g_origin;
  } else {
    g0 = lsf.evaluate(Vector::Zero(lsf.dimension()));
    ++evals;
  }
  if (!(g0 > 0.0)) throw UnsafeOrigin("find_root: G(0) = " + std::to_string(g0) + " is not safe");
  const double g_tol = opt.g_tol_scale * (1.0 + std::abs(g0));

  Bracket br{0.0, g0, 0.0, 0.0};
  if (q.r_hint) {
    if (!(*q.r_hint > 0.0)) throw DomainError("find_root: r_hint must be positive");
    br.hi = *q.r_hint;
    if (q.g_hint) {
      br.g_hi = *q.g_hint;
    } else {
      br.g_hi = g(br.hi);
      ++evals;
    }
    if (br.g_hi > 0.0) throw DomainError("find_root: r_hint is not in the failure set");
  } else {
    bool found = false;
    for (double r = 1.0;; r = std::min(2.0 * r, opt.r_max)) {
      const double gr = g(r);
      ++evals;
      if (gr <= 0.0) {
        br.hi = r;
        br.g_hi = gr;
        found = true;
        break;
      }
      br.lo = r;
      br.g_lo = gr;
      if (r >= opt.r_max) break;
    }
    if (!found) return std::nullopt;
  }
  Root root = brent(g, br, g_tol, opt);
  root.evaluations += evals;
  return root;
}

}  // namespace

std::optional<Root> try_find_root(const LimitState& lsf, const RootQuery& q, const RootOptions& options) {
  return search(lsf, q, options);
}

Root find_root(const LimitState& lsf, const RootQuery& q, const RootOptions& options) {
  auto root = search(lsf, q, options);
  if (!root) throw NoRootFound("find_root: no sign change up to radius " + std::to_string(options.r_max));
  return *root;
}

double rescale_root(double r, double sigma, double sigma_next) {
  if (!(sigma_next >= 1.0) || sigma_next > sigma) {
    throw DomainError("rescale_root: need 1 <= sigma_next <= sigma");
  }
  if (!(r > 0.0)) throw DomainError("rescale_root: radius must be positive");
  return r * sigma / sigma_next;
}

}  // namespace sdis
