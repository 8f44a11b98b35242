#include "arclift/desing.hpp"

#include <algorithm>

#include "arclift/error.hpp"

namespace arclift {

int ValidationReport::exit_code() const {
  if (!structure_ok) return 1;
  if (!certificate_ok || !order_ok) return 2;
  if (!morphism_ok) return 1;
  return 0;
}

ColumnOrder::ColumnOrder(std::span<const int> minor_cols, int n) : order_(minor_cols.begin(), minor_cols.end()) {
  for (int j = 0; j < n; ++j) {
    if (std::find(minor_cols.begin(), minor_cols.end(), j) == minor_cols.end()) order_.push_back(j);
  }
}

bool ColumnOrder::is_identity() const {
  for (std::size_t k = 0; k < order_.size(); ++k) {
    if (order_[k] != static_cast<int>(k)) return false;
  }
  return true;
}

std::vector<std::size_t> ColumnOrder::slot_map(bool to_internal, int n) const {
  std::vector<std::size_t> map(static_cast<std::size_t>(2 * n));
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
  for (std::size_t k = 0; k < order_.size(); ++k) {
    auto original = static_cast<std::size_t>(order_[k]);
    if (to_internal) {
      map[original] = k;
    } else {
      map[k] = original;
    }
  }
  return map;
}

Poly ColumnOrder::to_internal(const Poly& p) const { return p.remap(slot_map(true, p.n())); }
Poly ColumnOrder::to_external(const Poly& p) const { return p.remap(slot_map(false, p.n())); }

SeriesVector ColumnOrder::to_internal(std::span<const Series> v) const {
  SeriesVector out;
  for (int original : order_) out.push_back(v[static_cast<std::size_t>(original)]);
  return out;
}

SeriesVector ColumnOrder::to_external(std::span<const Series> v) const {
  SeriesVector out(v.begin(), v.end());
  for (std::size_t k = 0; k < order_.size(); ++k) out[static_cast<std::size_t>(order_[k])] = v[k];
  return out;
}

std::vector<std::optional<Series>> make_point(int n, std::span<const Series> ys, std::span<const Series> ts) {
  std::vector<std::optional<Series>> point(static_cast<std::size_t>(2 * n));
  for (std::size_t i = 0; i < ys.size(); ++i) point[i] = ys[i];
  for (std::size_t i = 0; i < ts.size(); ++i) point[static_cast<std::size_t>(n) + i] = ts[i];
  return point;
}

Poly jacobian_minor(std::span<const Poly> f, int n, std::span<const int> cols) {
  PolyMatrix jac = jacobian(f, n);
  PolyMatrix sub(jac.ring(), n, f.size(), cols.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) sub.at(i, k) = jac.at(i, static_cast<std::size_t>(cols[k]));
  }
  return det(sub);
}

ValidationReport validate_problem(const Problem& problem) {
  ValidationReport rep;
  const int n = problem.n;
  std::vector<Poly> f = problem.f();
  auto point = make_point(n, problem.jet, {});
  Series p_at = (problem.cert.n_poly * jacobian_minor(f, n, problem.minor_cols)).eval(point);

  if (problem.c) {
    rep.c = *problem.c;
    rep.c_was_given = true;
  } else {
    Series known = p_at.truncated(problem.jet_prec);
    rep.c = known.is_zero() ? std::max(1, (problem.jet_prec - 1) / 2) : known.ord() + 1;
  }
  const int strict_prec = 2 * rep.c + 1;

  rep.structure_ok = problem.jet_prec >= strict_prec;
  rep.checks.push_back({"jet_precision", rep.structure_ok,
                        "jet_prec = " + std::to_string(problem.jet_prec) + ", 2c+1 = " + std::to_string(strict_prec) +
                            (rep.c_was_given ? "" : " (c = e+1 chosen)")});

  rep.certificate_ok = true;
  std::string cert_detail = "N*I_j = sum_k c_jk f_k for all j";
  for (std::size_t j = 0; j < problem.ideal.size(); ++j) {
    Poly diff = problem.cert.n_poly * problem.ideal[j];
    for (std::size_t k = 0; k < f.size(); ++k) diff -= problem.cert.cofactors[j][k] * f[k];
    if (!diff.is_zero()) {
      rep.certificate_ok = false;
      cert_detail = "identity fails for generator " + std::to_string(j + 1) + ": defect " + diff.to_string();
      break;
    }
  }
  rep.checks.push_back({"certificate", rep.certificate_ok, cert_detail});

  rep.morphism_ok = true;
  std::string morph_detail = "I_j(y') = 0 mod x^" + std::to_string(strict_prec) + " for all j";
  for (std::size_t j = 0; j < problem.ideal.size(); ++j) {
    Series value = problem.ideal[j].eval(point).truncated(strict_prec);
    if (!value.is_zero()) {
      rep.morphism_ok = false;
      morph_detail = "generator " + std::to_string(j + 1) + " has order " + std::to_string(value.ord()) +
                     " < " + std::to_string(strict_prec) + " at y'";
      break;
    }
  }
  rep.checks.push_back({"morphism", rep.morphism_ok, morph_detail});

  Series p_trunc = p_at.truncated(strict_prec);
  std::string order_detail;
  if (p_trunc.is_zero()) {
    rep.order_ok = false;
    order_detail = "P(y') vanishes modulo x^" + std::to_string(strict_prec) +
                   "; the jet gives no smoothness certificate and strict lifts cannot be parametrized";
  } else {
    rep.e = p_trunc.ord();
    rep.order_ok = *rep.e < rep.c;
    order_detail = "e = ord P(y') = " + std::to_string(*rep.e) + (rep.order_ok ? " < " : " >= ") +
                   "c = " + std::to_string(rep.c);
  }
  rep.checks.push_back({"order", rep.order_ok, order_detail});
  return rep;
}

NormalizedCertificate normalize_certificate(const Certificate& cert, const Poly& minor, std::span<const Series> jet,
                                            int e, int c) {
  if (e >= c) {
    throw Error(ErrorKind::OrderTooHigh, "ord P(y') = " + std::to_string(e) + " is not below c = " + std::to_string(c));
  }
  const BaseRing& ring = minor.ring();
  NormalizedCertificate out;
  out.shift = c - e;
  Series x_shift = Series::monomial(ring, Scalar::one(ring.field), out.shift);
  out.n_norm = x_shift * cert.n_poly;
  out.p = out.n_norm * minor;
  out.d = out.p.eval(make_point(minor.n(), jet, {}));
  if (out.d.is_zero() || out.d.ord() != c) {
    throw Error(ErrorKind::IdentityFailed, "normalized d = " + out.d.to_string() + " does not have order " +
                                               std::to_string(c));
  }
  out.cert.n_poly = out.n_norm;
  out.cert.cofactors = cert.cofactors;
  for (auto& row : out.cert.cofactors) {
    for (auto& entry : row) entry = x_shift * entry;
  }
  return out;
}

PolyMatrix build_border(std::span<const Poly> f, int n) {
  const std::size_t r = f.size();
  PolyMatrix jac = jacobian(f, n);
  PolyMatrix h(jac.ring(), n, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) h.at(i, j) = jac.at(i, j);
  }
  for (std::size_t k = r; k < static_cast<std::size_t>(n); ++k) h.at(k, k) = Poly::from_int(jac.ring(), n, 1);
  return h;
}

GMatrices compute_G(const PolyMatrix& h, const Poly& n_norm, const Poly& p, std::span<const Series> jet) {
  PolyMatrix g = n_norm * adjugate(h);
  PolyMatrix p_id = p * PolyMatrix::identity(h.ring(), h.n_vars(), h.rows());
  if (!(g * h == p_id) || !(h * g == p_id)) {
    throw Error(ErrorKind::IdentityFailed, "G H = H G = P Id does not hold");
  }
  SeriesMatrix gy = evaluate(g, make_point(h.n_vars(), jet, {}));
  return {std::move(g), std::move(gy)};
}

std::vector<Poly> lift_images(std::span<const Series> jet, const Series& d, const SeriesMatrix& gy) {
  const int n = static_cast<int>(jet.size());
  const BaseRing& ring = d.ring();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < jet.size(); ++i) {
    Poly y = Poly::constant(ring, n, jet[i]);
    for (std::size_t j = 0; j < gy.cols(); ++j) {
      y += (d * gy.at(i, j)) * Poly::variable(ring, n, Var::t(static_cast<int>(j) + 1));
    }
    images.push_back(std::move(y));
  }
  return images;
}

namespace {

std::vector<std::optional<Poly>> y_substitution(const std::vector<Poly>& images) {
  std::vector<std::optional<Poly>> map(2 * images.size());
  for (std::size_t i = 0; i < images.size(); ++i) map[i] = images[i];
  return map;
}

Exponents t_unit(int n, int j) {
  Exponents e(static_cast<std::size_t>(2 * n), 0);
  e[Var::t(j).slot(n)] = 1;
  return e;
}

}  // namespace

TaylorData taylor_decompose(std::span<const Poly> f, std::span<const Series> jet, const Series& d,
                            const SeriesMatrix& gy) {
  const int n = static_cast<int>(jet.size());
  const int r = static_cast<int>(f.size());
  const BaseRing& ring = d.ring();
  const Series d2 = d * d;
  auto map = y_substitution(lift_images(jet, d, gy));
  auto point = make_point(n, jet, {});

  TaylorData out;
  for (int i = 0; i < r; ++i) {
    const Poly& fi = f[static_cast<std::size_t>(i)];
    Series at_jet = fi.eval(point);
    Series ai = at_jet.div_exact(d2);
    if (!ai.is_zero() && ai.ord() < 1) {
      throw Error(ErrorKind::OrderViolation, "a_" + std::to_string(i + 1) + " = " + ai.to_string() + " is a unit");
    }
    out.a.push_back(ai);

    Poly increment = fi.subst(map) - Poly::constant(ring, n, at_jet);
    Poly scaled = increment.div_exact(d2);
    for (int j = 1; j <= n; ++j) {
      Series linear = scaled.coeff(t_unit(n, j));
      Series expected = Series::from_int(ring, (j == i + 1) ? 1 : 0);
      if (!(linear == expected)) {
        throw Error(ErrorKind::IdentityFailed, "linear T" + std::to_string(j) + "-coefficient of equation " +
                                                   std::to_string(i + 1) + " is " + linear.to_string());
      }
    }
    Poly qi = scaled - Poly::variable(ring, n, Var::t(i + 1));
    // drop the linear coefficient that cancelled only to its precision
    Poly cleaned(ring, n);
    for (const auto& [e, coeff] : qi.terms()) {
      unsigned deg = 0;
      for (std::size_t s = static_cast<std::size_t>(n); s < e.size(); ++s) deg += e[s];
      if (deg >= 2) {
        cleaned.add_term(e, coeff);
      } else if (!coeff.is_zero()) {
        throw Error(ErrorKind::IdentityFailed, "Q has a term of T-degree " + std::to_string(deg));
      }
    }
    out.q.push_back(std::move(cleaned));
  }
  return out;
}

SmoothModel build_model(const Problem& problem) {
  ValidationReport rep = validate_problem(problem);
  if (!rep.all_passed()) {
    std::string why;
    for (const auto& check : rep.checks) {
      if (!check.passed) why += (why.empty() ? "" : "; ") + check.name + ": " + check.detail;
    }
    throw Error(rep.exit_code() == 2 ? ErrorKind::OrderTooHigh : ErrorKind::InvalidProblem, why);
  }

  SmoothModel m;
  m.ring = problem.ring;
  m.n = problem.n;
  m.r = problem.r();
  m.c = rep.c;
  m.e = *rep.e;
  m.columns = ColumnOrder(problem.minor_cols, problem.n);
  for (const auto& p : problem.ideal) m.ideal.push_back(m.columns.to_internal(p));
  for (const auto& p : problem.f()) m.f.push_back(m.columns.to_internal(p));
  Certificate cert{m.columns.to_internal(problem.cert.n_poly), {}};
  for (const auto& row : problem.cert.cofactors) {
    std::vector<Poly> internal;
    for (const auto& entry : row) internal.push_back(m.columns.to_internal(entry));
    cert.cofactors.push_back(std::move(internal));
  }
  m.jet = m.columns.to_internal(problem.jet);

  std::vector<int> leading(static_cast<std::size_t>(m.r));
  for (int k = 0; k < m.r; ++k) leading[static_cast<std::size_t>(k)] = k;
  m.minor = jacobian_minor(m.f, m.n, leading);

  NormalizedCertificate norm = normalize_certificate(cert, m.minor, m.jet, m.e, m.c);
  m.shift = norm.shift;
  m.n_norm = norm.n_norm;
  m.p = norm.p;
  m.d = norm.d;
  m.cert = std::move(norm.cert);

  m.h = build_border(m.f, m.n);
  if (!(det(m.h) == m.minor)) throw Error(ErrorKind::IdentityFailed, "det H differs from the selected minor");
  GMatrices gm = compute_G(m.h, m.n_norm, m.p, m.jet);
  m.g = std::move(gm.g);
  m.gy = std::move(gm.gy);

  TaylorData taylor = taylor_decompose(m.f, m.jet, m.d, m.gy);
  m.a = std::move(taylor.a);
  m.q = std::move(taylor.q);

  PolyMatrix jac_g = PolyMatrix::identity(m.ring, m.n, static_cast<std::size_t>(m.r));
  for (int i = 0; i < m.r; ++i) {
    auto row = static_cast<std::size_t>(i);
    m.eqs.push_back(Poly::constant(m.ring, m.n, m.a[row]) + Poly::variable(m.ring, m.n, Var::t(i + 1)) + m.q[row]);
    for (int j = 0; j < m.r; ++j) {
      jac_g.at(row, static_cast<std::size_t>(j)) += m.q[row].diff(Var::t(j + 1));
    }
  }
  m.loc_s = det(jac_g);
  m.loc_s_prime = m.p.subst(y_substitution(lift_images(m.jet, m.d, m.gy))).div_exact(m.d);

  Series one = Series::from_int(m.ring, 1);
  if (!(m.loc_s.constant_term() == one)) {
    throw Error(ErrorKind::IdentityFailed, "loc_s has constant term " + m.loc_s.constant_term().to_string());
  }
  Series s_prime_0 = m.loc_s_prime.constant_term();
  if (s_prime_0.is_zero() || !s_prime_0.coeff(0).is_one()) {
    throw Error(ErrorKind::IdentityFailed, "loc_s' has constant term " + s_prime_0.to_string());
  }
  return m;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

VerificationReport verify_model(const SmoothModel& m) {
  VerificationReport rep;
  const int n = m.n;
  const BaseRing& ring = m.ring;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  PolyMatrix p_id = m.p * PolyMatrix::identity(ring, n, static_cast<std::size_t>(n));
  add("GH = P Id", m.g * m.h == p_id);
  add("HG = P Id", m.h * m.g == p_id);
  add("det H = M", det(m.h) == m.minor);

  add("ord d = c", !m.d.is_zero() && m.d.ord() == m.c,
      "ord d = " + std::to_string(m.d.ord()) + ", c = " + std::to_string(m.c));

  auto point = make_point(n, m.jet, {});
  const Series d2 = m.d * m.d;
  bool a_ok = m.a.size() == static_cast<std::size_t>(m.r);
  for (int i = 0; a_ok && i < m.r; ++i) {
    const Series& ai = m.a[static_cast<std::size_t>(i)];
    a_ok = (ai.is_zero() || ai.ord() >= 1) && m.f[static_cast<std::size_t>(i)].eval(point) == d2 * ai;
  }
  add("f(y') = d^2 a, a in xA", a_ok);

  // Fresh substitution Y -> y' + d Gy T, built independently of the model.
  std::vector<std::optional<Poly>> map(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    Poly y = Poly::constant(ring, n, m.jet[static_cast<std::size_t>(i)]);
    for (int j = 0; j < n; ++j) {
      Series coeff = m.d * m.gy.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      Exponents e(static_cast<std::size_t>(2 * n), 0);
      e[Var::t(j + 1).slot(n)] = 1;
      y.add_term(e, coeff);
    }
    map[static_cast<std::size_t>(i)] = std::move(y);
  }

  bool taylor_ok = m.q.size() == static_cast<std::size_t>(m.r);
  bool q_degree_ok = taylor_ok;
  bool g_ok = m.eqs.size() == static_cast<std::size_t>(m.r);
  int taylor_prec = ring.n_work;
  for (int i = 0; taylor_ok && i < m.r; ++i) {
    auto row = static_cast<std::size_t>(i);
    Poly lhs = m.f[row].subst(map);
    Poly sum = Poly::constant(ring, n, m.a[row]) + Poly::variable(ring, n, Var::t(i + 1)) + m.q[row];
    Poly rhs = d2 * sum;
    taylor_prec = std::min({taylor_prec, lhs.min_coeff_prec(), rhs.min_coeff_prec()});
    taylor_ok = lhs == rhs && lhs.agrees_to(rhs, m.lift_prec());
    q_degree_ok = q_degree_ok && !m.q[row].uses_space(Var::Space::Y) &&
                  (m.q[row].is_zero() || m.q[row].min_t_degree() >= 2);
    g_ok = g_ok && m.eqs[row] == sum;
  }
  add("f(y' + d Gy T) = d^2 (a + T + Q)", taylor_ok, "checked to precision " + std::to_string(taylor_prec));
  add("Q in (T)^2", q_degree_ok);
  add("g = a + T + Q", g_ok);

  PolyMatrix jac_g = PolyMatrix::identity(ring, n, static_cast<std::size_t>(m.r));
  for (int i = 0; i < m.r && q_degree_ok; ++i) {
    for (int j = 0; j < m.r; ++j) {
      jac_g.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
          m.q[static_cast<std::size_t>(i)].diff(Var::t(j + 1));
    }
  }
  Series one = Series::from_int(ring, 1);
  add("loc_s = det(Id + dQ/dT), loc_s(0) = 1", det(jac_g) == m.loc_s && m.loc_s.constant_term() == one);

  Series s0 = m.loc_s_prime.constant_term();
  bool s_prime_ok = !s0.is_zero() && s0.coeff(0).is_one() && m.p.subst(map) == m.d * m.loc_s_prime;
  add("P(y' + d Gy T) = d loc_s', loc_s'(0) unit", s_prime_ok);

  bool cert_ok = m.cert.cofactors.size() == m.ideal.size();
  for (std::size_t j = 0; cert_ok && j < m.ideal.size(); ++j) {
    Poly diff = m.cert.n_poly * m.ideal[j];
    for (std::size_t k = 0; k < m.f.size(); ++k) diff -= m.cert.cofactors[j][k] * m.f[k];
    cert_ok = diff.is_zero();
  }
  add("N_norm I_j = sum c_jk f_k", cert_ok);
  return rep;
}

}  // namespace arclift
