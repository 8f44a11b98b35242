#include "arclift/series.hpp"

#include <algorithm>

#include "arclift/error.hpp"
#include "term_format.hpp"

namespace arclift {

Series::Series(const BaseRing& ring) : ring_(ring), prec_(ring.n_work) {}

Series::Series(const BaseRing& ring, std::vector<Scalar> coeffs, int prec)
    : ring_(ring), coeffs_(std::move(coeffs)), prec_(std::min(prec, ring.n_work)) {
  if (prec_ < 0) prec_ = 0;
  for (const auto& c : coeffs_) {
    if (c.field() != ring_.field) {
      throw Error(ErrorKind::FieldMismatch, c.field().name() + " coefficient in " + ring_.field.name() + " series");
    }
  }
  if (static_cast<int>(coeffs_.size()) > prec_) coeffs_.resize(static_cast<std::size_t>(prec_));
  normalize();
}

Series Series::constant(const BaseRing& ring, const Scalar& value) { return monomial(ring, value, 0); }

Series Series::from_int(const BaseRing& ring, long value) {
  return constant(ring, Scalar::from_int(ring.field, value));
}

Series Series::monomial(const BaseRing& ring, const Scalar& value, int exponent) {
  std::vector<Scalar> coeffs(static_cast<std::size_t>(exponent) + 1, Scalar::zero(ring.field));
  coeffs.back() = value;
  return Series(ring, std::move(coeffs), ring.n_work);
}

Series Series::zero(const BaseRing& ring, int prec) { return Series(ring, {}, prec); }

void Series::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void Series::check_ring(const Series& rhs) const {
  if (ring_ != rhs.ring_) {
    throw Error(ErrorKind::FieldMismatch, "series over " + ring_.field.name() + " (N_work " +
                                              std::to_string(ring_.n_work) + ") vs " + rhs.ring_.field.name() +
                                              " (N_work " + std::to_string(rhs.ring_.n_work) + ")");
  }
}

Scalar Series::coeff(int k) const {
  if (k < 0 || k >= prec_) {
    throw Error(ErrorKind::PrecisionExhausted,
                "coefficient of x^" + std::to_string(k) + " unknown at precision " + std::to_string(prec_));
  }
  if (k < size()) return coeffs_[static_cast<std::size_t>(k)];
  return Scalar::zero(ring_.field);
}

int Series::ord() const {
  for (int k = 0; k < size(); ++k) {
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return prec_;
}

Series Series::truncated(int prec) const {
  Series out = *this;
  if (prec < out.prec_) {
    out.prec_ = std::max(prec, 0);
    if (out.size() > out.prec_) out.coeffs_.resize(static_cast<std::size_t>(out.prec_));
    out.normalize();
  }
  return out;
}

Series Series::shifted_up(int k) const {
  std::vector<Scalar> coeffs(static_cast<std::size_t>(k), Scalar::zero(ring_.field));
  coeffs.insert(coeffs.end(), coeffs_.begin(), coeffs_.end());
  return Series(ring_, std::move(coeffs), prec_ + k);
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Series& Series::operator+=(const Series& rhs) {
  check_ring(rhs);
  prec_ = std::min(prec_, rhs.prec_);
  if (size() > prec_) coeffs_.resize(static_cast<std::size_t>(prec_));
  int common = std::min(rhs.size(), prec_);
  if (size() < common) coeffs_.resize(static_cast<std::size_t>(common), Scalar::zero(ring_.field));
  for (int k = 0; k < common; ++k) coeffs_[static_cast<std::size_t>(k)] += rhs.coeffs_[static_cast<std::size_t>(k)];
  normalize();
  return *this;
}

Series& Series::operator-=(const Series& rhs) { return *this += -rhs; }

Series operator*(const Series& a, const Series& b) {
  a.check_ring(b);
  int prec = std::min({a.prec_ + b.ord(), b.prec_ + a.ord(), a.ring_.n_work});
  int top = std::min(prec, a.size() + b.size() - 1);
  std::vector<Scalar> coeffs(static_cast<std::size_t>(std::max(top, 0)), Scalar::zero(a.field()));
  for (int i = 0; i < a.size(); ++i) {
    const Scalar& ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; j < b.size() && i + j < top; ++j) {
      coeffs[static_cast<std::size_t>(i + j)] += ai * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return Series(a.ring_, std::move(coeffs), prec);
}

Series& Series::operator*=(const Series& rhs) { return *this = *this * rhs; }

Series& Series::operator*=(const Scalar& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  normalize();
  return *this;
}

Series Series::inv_unit() const {
  if (prec_ == 0 || is_zero() || coeffs_.front().is_zero()) {
    throw Error(ErrorKind::NotAUnit, to_string() + " has positive order");
  }
  Scalar lead_inv = coeffs_.front().inverse();
  std::vector<Scalar> inv(static_cast<std::size_t>(prec_), Scalar::zero(ring_.field));
  inv[0] = lead_inv;
  for (int m = 1; m < prec_; ++m) {
    Scalar acc = Scalar::zero(ring_.field);
    for (int i = 1; i <= m && i < size(); ++i) {
      acc += coeffs_[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(m - i)];
    }
    inv[static_cast<std::size_t>(m)] = -acc * lead_inv;
  }
  return Series(ring_, std::move(inv), prec_);
}

Series Series::div_exact(const Series& divisor) const {
  check_ring(divisor);
  if (divisor.is_zero()) {
    throw Error(ErrorKind::NotDivisible, "divisor " + divisor.to_string() + " vanishes at its precision");
  }
  int k = divisor.ord();
  int num_ord = ord();
  if (!is_zero() && num_ord < k) {
    throw Error(ErrorKind::NotDivisible, to_string() + " is not divisible by " + divisor.to_string());
  }
  int prec = std::min({prec_ - k, divisor.prec_ - 2 * k + num_ord, ring_.n_work});
  if (prec <= 0) {
    throw Error(ErrorKind::PrecisionExhausted,
                "quotient " + to_string() + " / " + divisor.to_string() + " has no known digits");
  }
  Scalar lead_inv = divisor.coeffs_[static_cast<std::size_t>(k)].inverse();
  std::vector<Scalar> q(static_cast<std::size_t>(prec), Scalar::zero(ring_.field));
  for (int m = 0; m < prec; ++m) {
    Scalar acc = (m + k < size()) ? coeffs_[static_cast<std::size_t>(m + k)] : Scalar::zero(ring_.field);
    for (int i = 1; i <= m && i + k < divisor.size(); ++i) {
      acc -= divisor.coeffs_[static_cast<std::size_t>(i + k)] * q[static_cast<std::size_t>(m - i)];
    }
    q[static_cast<std::size_t>(m)] = acc * lead_inv;
  }
  return Series(ring_, std::move(q), prec);
}

bool operator==(const Series& a, const Series& b) {
  if (a.ring_ != b.ring_) return false;
  int common = std::min(a.prec_, b.prec_);
  for (int k = 0; k < common; ++k) {
    if (!(a.coeff(k) == b.coeff(k))) return false;
  }
  return true;
}

bool Series::agrees_to(const Series& other, int k) const {
  if (prec_ < k || other.prec_ < k) return false;
  return truncated(k) == other.truncated(k);
}

std::string Series::to_string(bool with_order) const {
  std::string out;
  for (int k = 0; k < size(); ++k) {
    const Scalar& c = coeffs_[static_cast<std::size_t>(k)];
    if (!c.is_zero()) detail::append_term(out, c, detail::x_power(k));
  }
  if (with_order) {
    std::string tail = "O(x^" + std::to_string(prec_) + ")";
    out = out.empty() ? tail : out + " + " + tail;
  } else if (out.empty()) {
    out = "0";
  }
  return out;
}

int min_prec(std::span<const Series> values, const BaseRing& ring) {
  int p = ring.n_work;
  for (const auto& v : values) p = std::min(p, v.prec());
  return p;
}

}  // namespace arclift
