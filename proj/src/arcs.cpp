#include "arclift/arcs.hpp"

#include <algorithm>

#include "arclift/error.hpp"

namespace arclift {

namespace {

void require_positive_order(std::span<const Series> values, const char* what) {
  for (const auto& v : values) {
    if (!v.is_zero() && v.ord() < 1) {
      throw Error(ErrorKind::OrderViolation, std::string(what) + " entry " + v.to_string() + " is not in xA'");
    }
  }
}

Series x_power(const BaseRing& ring, int k) { return Series::monomial(ring, Scalar::one(ring.field), k); }

/// Residual order of a vector of series: the least order, where a series
/// zero at precision p counts as p.
int residual_order(std::span<const Series> values, int cap) {
  int ord = cap;
  for (const auto& v : values) ord = std::min(ord, v.ord());
  return ord;
}

LiftResult lift_from_t(const SmoothModel& m, SeriesVector t, int solved_prec, int iterations) {
  const int n = m.n;
  SeriesVector y = m.jet;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto row = static_cast<std::size_t>(i);
      auto col = static_cast<std::size_t>(j);
      y[row] += (m.d * m.gy.at(row, col)) * t[col];
    }
  }
  // y is an arc modulo x^(2c + solved_prec) only
  for (auto& yi : y) yi = yi.truncated(2 * m.c + solved_prec);
  const int prec = min_prec(y, m.ring);

  auto point = make_point(n, y, {});
  LiftResult out;
  out.residual_f = m.ring.n_work;
  for (const auto& fi : m.f) out.residual_f = std::min(out.residual_f, fi.eval(point).ord());
  out.residual_ideal = m.ring.n_work;
  for (const auto& gen : m.ideal) out.residual_ideal = std::min(out.residual_ideal, gen.eval(point).ord());
  if (out.residual_f < prec || out.residual_ideal < prec - m.c) {
    throw Error(ErrorKind::IdentityFailed, "lift residuals " + std::to_string(out.residual_f) + "/" +
                                               std::to_string(out.residual_ideal) + " below precision " +
                                               std::to_string(prec));
  }
  const int strict_prec = 2 * m.c + 1;
  out.strict = prec >= strict_prec;
  for (int i = 0; out.strict && i < n; ++i) {
    auto row = static_cast<std::size_t>(i);
    out.strict = (y[row] - m.jet[row]).truncated(strict_prec).is_zero();
  }
  out.t = std::move(t);
  out.y = m.columns.to_external(y);
  out.prec = prec;
  out.iterations = iterations;
  return out;
}

/// Dense Gauss-Jordan over the coefficient field; returns one solution with
/// free unknowns set to zero, or nothing when the system is inconsistent.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> rows, std::size_t unknowns,
                                                const Field& field) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    Scalar inv = rows[rank][col].inverse();
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      Scalar factor = rows[i][col];
      for (std::size_t k = col; k <= unknowns; ++k) rows[i][k] -= factor * rows[rank][k];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t i = rank; i < rows.size(); ++i) {
    if (!rows[i][unknowns].is_zero()) return std::nullopt;
  }
  std::vector<Scalar> solution(unknowns, Scalar::zero(field));
  for (std::size_t i = 0; i < rank; ++i) solution[pivot_cols[i]] = rows[i][unknowns];
  return solution;
}

/// The reference's own t when it carries one; it equals extract_t of its arc
/// and is usually known to more digits.
SeriesVector reference_t(const SmoothModel& m, const LiftResult& reference) {
  if (reference.t.size() == static_cast<std::size_t>(m.n)) return reference.t;
  return extract_t(m, reference.y);
}

}  // namespace

HenselResult hensel_solve(const SmoothModel& m, std::span<const Series> t_free, std::span<const Series> t0,
                          int target_prec) {
  const int n = m.n;
  const int r = m.r;
  if (t_free.size() != static_cast<std::size_t>(m.param_count()) || t0.size() != static_cast<std::size_t>(r)) {
    throw Error(ErrorKind::NamespaceMismatch, "hensel_solve: wrong number of free or bound coordinates");
  }
  require_positive_order(t_free, "t_free");
  require_positive_order(t0, "t0");

  int attainable = m.lift_prec();
  for (const auto& eq : m.eqs) attainable = std::min(attainable, eq.min_coeff_prec());
  attainable = std::min(attainable, min_prec(t_free, m.ring));
  if (target_prec > attainable) {
    throw Error(ErrorKind::PrecisionExhausted, "target precision " + std::to_string(target_prec) +
                                                   " exceeds attainable " + std::to_string(attainable));
  }

  std::vector<std::vector<Poly>> jac(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) jac[static_cast<std::size_t>(i)].push_back(m.eqs[static_cast<std::size_t>(i)].diff(Var::t(j + 1)));
  }

  HenselResult out;
  // The seed only needs to be an approximate root; Newton recomputes every
  // digit, so it is read as exact.
  for (const auto& s : t0) {
    out.t_bound.emplace_back(m.ring, std::vector<Scalar>(s.coeffs().begin(), s.coeffs().end()), m.ring.n_work);
  }
  int previous = -1;
  while (true) {
    SeriesVector t = out.t_bound;
    t.insert(t.end(), t_free.begin(), t_free.end());
    auto point = make_point(n, {}, t);
    SeriesVector residual;
    for (const auto& eq : m.eqs) residual.push_back(eq.eval(point));
    int ord = residual_order(residual, m.ring.n_work);
    if (ord >= target_prec) {
      out.residual_order = ord;
      break;
    }
    bool all_zero = std::all_of(residual.begin(), residual.end(), [](const Series& s) { return s.is_zero(); });
    if (all_zero) {
      throw Error(ErrorKind::PrecisionExhausted, "residual known only to x^" + std::to_string(ord));
    }
    if (ord < 1 || ord <= previous) {
      throw Error(ErrorKind::NoProgress, "residual order " + std::to_string(ord) + " after " +
                                             std::to_string(out.iterations) + " Newton steps");
    }
    previous = ord;

    SeriesMatrix j(m.ring, static_cast<std::size_t>(r), static_cast<std::size_t>(r));
    for (std::size_t a = 0; a < jac.size(); ++a) {
      for (std::size_t b = 0; b < jac.size(); ++b) j.at(a, b) = jac[a][b].eval(point);
    }
    SeriesVector delta = solve_unit_system(std::move(j), std::move(residual));
    for (std::size_t a = 0; a < out.t_bound.size(); ++a) {
      out.t_bound[a] = (out.t_bound[a] - delta[a]).truncated(target_prec);
    }
    ++out.iterations;
  }
  for (auto& t : out.t_bound) t = t.truncated(target_prec);
  return out;
}

LiftResult make_lift(const SmoothModel& m, std::span<const Series> t_free) {
  require_positive_order(t_free, "t_free");
  int target = std::min(m.lift_prec(), min_prec(t_free, m.ring));
  SeriesVector t0(static_cast<std::size_t>(m.r), Series(m.ring));
  HenselResult solved = hensel_solve(m, t_free, t0, target);
  SeriesVector t = solved.t_bound;
  t.insert(t.end(), t_free.begin(), t_free.end());
  return lift_from_t(m, std::move(t), target, solved.iterations);
}

SeriesVector extract_t(const SmoothModel& m, std::span<const Series> arc) {
  if (arc.size() != static_cast<std::size_t>(m.n)) {
    throw Error(ErrorKind::NamespaceMismatch, "arc must have n coordinates");
  }
  const int strict_prec = 2 * m.c + 1;
  SeriesVector y = m.columns.to_internal(arc);
  SeriesVector eps;
  const Series d2 = m.d * m.d;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Series diff = y[i] - m.jet[i];
    if (diff.prec() < strict_prec || !diff.truncated(strict_prec).is_zero()) {
      throw Error(ErrorKind::NotStrict, "coordinate " + std::to_string(m.columns.order()[i] + 1) +
                                            " differs from the jet below x^" + std::to_string(strict_prec));
    }
    eps.push_back(diff.div_exact(d2));
  }
  SeriesMatrix h_at = evaluate(m.h, make_point(m.n, m.jet, {}));
  SeriesVector t = h_at.apply(eps);

  auto point = make_point(m.n, {}, t);
  for (std::size_t i = 0; i < m.eqs.size(); ++i) {
    Series value = m.eqs[i].eval(point);
    if (!value.is_zero()) {
      throw Error(ErrorKind::IdentityFailed, "g(t) = " + value.to_string() + ": the input is not an arc at its precision");
    }
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    Series rebuilt = m.jet[i];
    for (std::size_t j = 0; j < t.size(); ++j) rebuilt += (m.d * m.gy.at(i, j)) * t[j];
    if (!(rebuilt == y[i])) throw Error(ErrorKind::IdentityFailed, "y' + d Gy t does not reproduce the arc");
  }
  return t;
}

LiftResult reference_from_arc(const SmoothModel& m, std::span<const Series> arc) {
  SeriesVector t = extract_t(m, arc);
  int prec = min_prec(t, m.ring);
  return lift_from_t(m, std::move(t), prec, 0);
}

LiftResult offset_lift(const SmoothModel& m, const LiftResult& reference, std::span<const Series> z) {
  if (!reference.strict) throw Error(ErrorKind::NotStrict, "offset_lift needs a strict reference");
  if (z.size() != static_cast<std::size_t>(m.param_count())) {
    throw Error(ErrorKind::NamespaceMismatch, "expected " + std::to_string(m.param_count()) + " parameters");
  }
  const int strict_prec = 2 * m.c + 1;
  SeriesVector base = reference_t(m, reference);
  const Series shift = x_power(m.ring, strict_prec);
  SeriesVector t_free;
  for (std::size_t j = 0; j < z.size(); ++j) {
    t_free.push_back(base[static_cast<std::size_t>(m.r) + j] + shift * z[j]);
  }
  SeriesVector seed(base.begin(), base.begin() + m.r);
  int target = std::min(m.lift_prec(), min_prec(t_free, m.ring));
  HenselResult solved = hensel_solve(m, t_free, seed, target);
  SeriesVector t = solved.t_bound;
  t.insert(t.end(), t_free.begin(), t_free.end());
  LiftResult out = lift_from_t(m, std::move(t), target, solved.iterations);
  if (!out.strict) throw Error(ErrorKind::IdentityFailed, "offset lift is not strict");
  for (std::size_t i = 0; i < out.y.size(); ++i) {
    if (!(out.y[i].truncated(strict_prec) == reference.y[i].truncated(strict_prec))) {
      throw Error(ErrorKind::IdentityFailed, "offset lift left the reference class mod x^(2c+1)");
    }
  }
  return out;
}

SeriesVector extract_params(const SmoothModel& m, const LiftResult& reference, std::span<const Series> arc) {
  const int strict_prec = 2 * m.c + 1;
  SeriesVector t = extract_t(m, arc);
  SeriesVector base = reference_t(m, reference);
  SeriesVector z;
  for (int j = m.r; j < m.n; ++j) {
    auto idx = static_cast<std::size_t>(j);
    Series diff = t[idx] - base[idx];
    if (!diff.truncated(strict_prec).is_zero()) {
      throw Error(ErrorKind::OutOfFamily, "free coordinate T" + std::to_string(j + 1) + " differs from the reference at order " +
                                              std::to_string(diff.ord()) + " < " + std::to_string(strict_prec));
    }
    if (diff.prec() <= strict_prec) {
      throw Error(ErrorKind::PrecisionExhausted, "arc too short to recover parameters");
    }
    z.push_back(diff.div_exact(x_power(m.ring, strict_prec)));
  }
  LiftResult again = offset_lift(m, reference, z);
  int check_prec = min_prec(arc, m.ring) - 4 * m.c - 1;
  for (std::size_t i = 0; check_prec > 0 && i < arc.size(); ++i) {
    if (!again.y[i].agrees_to(arc[i], std::min(check_prec, again.y[i].prec()))) {
      throw Error(ErrorKind::IdentityFailed, "offset_lift(extract_params(y)) does not reproduce y");
    }
  }
  return z;
}

StrictSearch find_strict_reference(const SmoothModel& m, int search_depth) {
  StrictSearch out;
  SeriesVector zero(static_cast<std::size_t>(m.param_count()), Series(m.ring));
  LiftResult canonical = make_lift(m, zero);
  if (canonical.strict) {
    out.lift = std::move(canonical);
    out.stage = 1;
    out.note = "t_free = 0 gives a strict lift";
    return out;
  }

  // A strict lift is y' + d^2 eps with eps in xA'^n and f(y' + d^2 eps) = 0,
  // i.e. a + J(y') eps + d^2 R(eps) = 0.  Modulo x^(2 mu + 1), with
  // mu = ord M(y') < c, this is linear in the coefficients of eps; a solution
  // there lifts to an exact one whose free part is the t_free we want.
  auto jet_point = make_point(m.n, m.jet, {});
  const int mu = m.minor.eval(jet_point).ord();
  const int depth = std::min(search_depth, 2 * mu);
  const int eq_degree = 2 * mu + 1;
  for (const auto& ai : m.a) {
    if (ai.prec() < eq_degree) {
      out.note = "a is not known to x^" + std::to_string(eq_degree);
      return out;
    }
  }
  SeriesMatrix h_at = evaluate(m.h, jet_point);
  const Field& field = m.ring.field;
  const std::size_t unknowns = static_cast<std::size_t>(m.n) * static_cast<std::size_t>(std::max(depth, 0));
  auto unknown = [&](int coord, int degree) {
    return static_cast<std::size_t>(coord) * static_cast<std::size_t>(depth) + static_cast<std::size_t>(degree - 1);
  };
  std::vector<std::vector<Scalar>> rows;
  for (int i = 0; i < m.r; ++i) {
    for (int k = 0; k < eq_degree; ++k) {
      std::vector<Scalar> row(unknowns + 1, Scalar::zero(field));
      for (int j = 0; j < m.n; ++j) {
        const Series& entry = h_at.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        for (int deg = 1; deg <= std::min(k, depth); ++deg) {
          if (k - deg < entry.size()) row[unknown(j, deg)] = entry.coeff(k - deg);
        }
      }
      row[unknowns] = -m.a[static_cast<std::size_t>(i)].coeff(k);
      rows.push_back(std::move(row));
    }
  }
  auto solution = solve_linear(std::move(rows), unknowns, field);
  if (!solution) {
    out.note = "linearized strictness conditions through x^" + std::to_string(eq_degree - 1) +
               " are inconsistent at search depth " + std::to_string(depth);
    return out;
  }
  SeriesVector t_free;
  for (int j = m.r; j < m.n; ++j) {
    std::vector<Scalar> coeffs(static_cast<std::size_t>(depth) + 1, Scalar::zero(field));
    for (int deg = 1; deg <= depth; ++deg) coeffs[static_cast<std::size_t>(deg)] = (*solution)[unknown(j, deg)];
    t_free.emplace_back(m.ring, std::move(coeffs), m.ring.n_work);
  }
  LiftResult found = make_lift(m, t_free);
  if (found.strict) {
    out.lift = std::move(found);
    out.stage = 2;
    out.note = "strict lift from the coefficient search at depth " + std::to_string(depth);
  } else {
    out.note = "coefficient search candidate is not strict at depth " + std::to_string(depth);
  }
  return out;
}

}  // namespace arclift
