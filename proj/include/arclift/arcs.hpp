#pragma once

#include <optional>
#include <span>
#include <string>

#include "arclift/desing.hpp"
#include "arclift/series.hpp"

namespace arclift {

struct HenselResult {
  SeriesVector t_bound;
  int iterations = 0;
  /// Order of g at the returned point (>= the requested target).
  int residual_order = 0;
};

/// Newton iteration t <- t - J^{-1} g(t) on the bound T's with the free T's
/// held at t_free.  J = Id + dQ/dT is a unit matrix at points of xA', so the
/// residual order at least doubles per step.
///
/// Throws PrecisionExhausted when the equations are not known to
/// target_prec, NoProgress when the residual order stalls.
HenselResult hensel_solve(const SmoothModel& model, std::span<const Series> t_free, std::span<const Series> t0,
                          int target_prec);

/// A lifted arc y'' = y' + d Gy t.
struct LiftResult {
  /// Full T-vector in internal order: bound entries first, then free ones.
  SeriesVector t;
  /// The arc in the problem's original variable order.
  SeriesVector y;
  /// min_i ord f_i(y''), and the same over all ideal generators.
  int residual_f = 0;
  int residual_ideal = 0;
  /// y'' = y' mod x^(2c+1).
  bool strict = false;
  int prec = 0;
  int iterations = 0;
};

/// Lift with the given free coordinates (ord >= 1), solving the bound ones.
LiftResult make_lift(const SmoothModel& model, std::span<const Series> t_free);

/// Recover t from a strict arc: eps = (y'' - y') / d^2, t = H(y') eps.
/// Throws NotStrict when y'' differs from y' below x^(2c+1).
SeriesVector extract_t(const SmoothModel& model, std::span<const Series> arc);

/// The lift whose free coordinates are t~_free + x^(2c+1) z, where t~ is
/// extracted from the strict reference; the bound coordinates are solved
/// starting from t~_bound.
LiftResult offset_lift(const SmoothModel& model, const LiftResult& reference, std::span<const Series> z);

/// Inverse of offset_lift.  Throws OutOfFamily when the free coordinates of
/// the arc differ from the reference's below x^(2c+1).
SeriesVector extract_params(const SmoothModel& model, const LiftResult& reference, std::span<const Series> arc);

/// Wrap an external strict arc as a reference lift (checks that it is one).
LiftResult reference_from_arc(const SmoothModel& model, std::span<const Series> arc);

struct StrictSearch {
  std::optional<LiftResult> lift;
  /// 1: t_free = 0 was strict; 2: found by the coefficient search.
  int stage = 0;
  std::string note;
};

/// Bounded search for a strict lift.  An empty result is not a proof that
/// none exists.
StrictSearch find_strict_reference(const SmoothModel& model, int search_depth);

}  // namespace arclift
