#include "arclift/poly.hpp"

#include <algorithm>

#include "arclift/error.hpp"
#include "term_format.hpp"

namespace arclift {

std::string Var::name() const {
  return (space == Space::Y ? "Y" : "T") + std::to_string(index);
}

std::size_t Var::slot(int n) const {
  return static_cast<std::size_t>((space == Space::Y ? 0 : n) + index - 1);
}

bool TermOrder::operator()(const Exponents& a, const Exponents& b) const {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

namespace {

Var var_at(std::size_t slot, int n) {
  auto s = static_cast<int>(slot);
  return s < n ? Var::y(s + 1) : Var::t(s - n + 1);
}

unsigned t_degree(const Exponents& e, int n) {
  unsigned deg = 0;
  for (std::size_t i = static_cast<std::size_t>(n); i < e.size(); ++i) deg += e[i];
  return deg;
}

}  // namespace

std::string monomial_to_string(const Exponents& exponents, int n) {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += var_at(i, n).name();
    if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
  }
  return out;
}

Poly::Poly(const BaseRing& ring, int n) : ring_(ring), n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidProblem, "polynomial ring needs n >= 1");
}

Poly Poly::constant(const BaseRing& ring, int n, const Series& value) {
  Poly p(ring, n);
  p.add_term(Exponents(static_cast<std::size_t>(2 * n), 0), value);
  return p;
}

Poly Poly::from_int(const BaseRing& ring, int n, long value) {
  return constant(ring, n, Series::from_int(ring, value));
}

Poly Poly::variable(const BaseRing& ring, int n, Var v) {
  if (v.index < 1 || v.index > n) throw Error(ErrorKind::UnknownVariable, v.name());
  Exponents e(static_cast<std::size_t>(2 * n), 0);
  e[v.slot(n)] = 1;
  Poly p(ring, n);
  p.add_term(e, Series::from_int(ring, 1));
  return p;
}

void Poly::check_compatible(const Poly& rhs) const {
  if (n_ != rhs.n_) {
    throw Error(ErrorKind::NamespaceMismatch,
                "polynomials over " + std::to_string(n_) + " and " + std::to_string(rhs.n_) + " variables");
  }
  if (ring_ != rhs.ring_) throw Error(ErrorKind::FieldMismatch, "polynomials over different base rings");
}

void Poly::add_term(const Exponents& exponents, const Series& coeff) {
  if (exponents.size() != static_cast<std::size_t>(2 * n_)) {
    throw Error(ErrorKind::NamespaceMismatch, "exponent vector of wrong length");
  }
  if (coeff.ring() != ring_) throw Error(ErrorKind::FieldMismatch, "coefficient over a different base ring");
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    if (!coeff.is_zero()) terms_.emplace(exponents, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Series Poly::coeff(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? Series(ring_) : it->second;
}

Series Poly::constant_term() const { return coeff(Exponents(static_cast<std::size_t>(2 * n_), 0)); }

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  check_compatible(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly operator*(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  Poly out(a.ring_, a.n_);
  Exponents e(static_cast<std::size_t>(2 * a.n_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly operator*(const Series& s, const Poly& p) {
  Poly out(p.ring_, p.n_);
  for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = from_int(ring_, n_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Series Poly::eval(std::span<const std::optional<Series>> point) const {
  if (point.size() != static_cast<std::size_t>(2 * n_)) {
    throw Error(ErrorKind::NamespaceMismatch, "evaluation point of wrong length");
  }
  // powers[slot][k] = point[slot]^k, filled on demand
  std::vector<std::vector<Series>> powers(point.size());
  auto power = [&](std::size_t slot, std::uint32_t k) -> const Series& {
    if (!point[slot]) throw Error(ErrorKind::MissingVariable, var_at(slot, n_).name());
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(Series::from_int(ring_, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * *point[slot]);
    return cache[k];
  };
  Series total(ring_);
  for (const auto& [e, c] : terms_) {
    Series term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term *= power(i, e[i]);
    }
    total += term;
  }
  return total;
}

Poly Poly::subst(std::span<const std::optional<Poly>> images) const {
  if (images.size() != static_cast<std::size_t>(2 * n_)) {
    throw Error(ErrorKind::NamespaceMismatch, "substitution map of wrong length");
  }
  for (const auto& img : images) {
    if (img) check_compatible(*img);
  }
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](std::size_t slot, std::uint32_t k) -> const Poly& {
    auto& cache = powers[slot];
    if (cache.empty()) {
      cache.push_back(from_int(ring_, n_, 1));
      cache.push_back(images[slot] ? *images[slot] : variable(ring_, n_, var_at(slot, n_)));
    }
    while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
    return cache[k];
  };
  Poly out(ring_, n_);
  for (const auto& [e, c] : terms_) {
    Poly term = constant(ring_, n_, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) term = term * power(i, e[i]);
    }
    out += term;
  }
  return out;
}

Poly Poly::diff(Var v) const {
  if (v.index < 1 || v.index > n_) throw Error(ErrorKind::UnknownVariable, v.name());
  std::size_t slot = v.slot(n_);
  Poly out(ring_, n_);
  for (const auto& [e, c] : terms_) {
    if (e[slot] == 0) continue;
    Exponents d = e;
    --d[slot];
    out.add_term(d, c * Scalar::from_int(ring_.field, static_cast<long>(e[slot])));
  }
  return out;
}

Poly Poly::div_exact(const Series& divisor) const {
  Poly out(ring_, n_);
  for (const auto& [e, c] : terms_) out.add_term(e, c.div_exact(divisor));
  return out;
}

Poly Poly::truncated(int prec) const {
  Poly out(ring_, n_);
  for (const auto& [e, c] : terms_) out.add_term(e, c.truncated(prec));
  return out;
}

Poly Poly::remap(std::span<const std::size_t> new_slot) const {
  Poly out(ring_, n_);
  Exponents moved(static_cast<std::size_t>(2 * n_));
  for (const auto& [e, c] : terms_) {
    std::fill(moved.begin(), moved.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) moved[new_slot[i]] += e[i];
    out.add_term(moved, c);
  }
  return out;
}

bool Poly::uses(Var v) const {
  std::size_t slot = v.slot(n_);
  return std::any_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[slot] > 0; });
}

bool Poly::uses_space(Var::Space space) const {
  for (int i = 1; i <= n_; ++i) {
    if (uses({space, i})) return true;
  }
  return false;
}

unsigned Poly::min_t_degree() const {
  if (terms_.empty()) return 0;
  unsigned best = ~0U;
  for (const auto& [e, c] : terms_) best = std::min(best, t_degree(e, n_));
  return best;
}

unsigned Poly::max_t_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, t_degree(e, n_));
  return best;
}

int Poly::min_coeff_prec() const {
  int p = ring_.n_work;
  for (const auto& [e, c] : terms_) p = std::min(p, c.prec());
  return p;
}

bool Poly::agrees_to(const Poly& other, int k) const {
  if (n_ != other.n_ || ring_ != other.ring_) return false;
  auto known = [&](const Poly& p) {
    return std::all_of(p.terms_.begin(), p.terms_.end(), [&](const auto& t) { return t.second.prec() >= k; });
  };
  if (!known(*this) || !known(other)) return false;
  for (const auto& [e, c] : terms_) {
    if (!c.agrees_to(other.coeff(e), k)) return false;
  }
  for (const auto& [e, c] : other.terms_) {
    if (!c.agrees_to(coeff(e), k)) return false;
  }
  return true;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_ || a.ring_ != b.ring_) return false;
  for (const auto& [e, c] : a.terms_) {
    if (!(c == b.coeff(e))) return false;
  }
  for (const auto& [e, c] : b.terms_) {
    if (!(c == a.coeff(e))) return false;
  }
  return true;
}

std::string Poly::to_string() const {
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string vars = monomial_to_string(e, n_);
    for (int k = 0; k < c.size(); ++k) {
      const Scalar& s = c.coeffs()[static_cast<std::size_t>(k)];
      if (s.is_zero()) continue;
      std::string mono = detail::x_power(k);
      if (!vars.empty()) mono = mono.empty() ? vars : mono + "*" + vars;
      detail::append_term(out, s, mono);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace arclift
