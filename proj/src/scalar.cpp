#include "arclift/scalar.hpp"

#include "arclift/error.hpp"

namespace arclift {

namespace {

bool is_prime_u32(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t reduce(const mpz_class& value, std::uint32_t p) {
  mpz_class r = value % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::NamespaceMismatch: return "NamespaceMismatch";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::OrderTooHigh: return "OrderTooHigh";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::IdentityFailed: return "IdentityFailed";
    case ErrorKind::NoProgress: return "NoProgress";
    case ErrorKind::NotStrict: return "NotStrict";
    case ErrorKind::OutOfFamily: return "OutOfFamily";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1U << 31) || !is_prime_u32(p)) {
    throw Error(ErrorKind::InvalidProblem, "field characteristic " + std::to_string(p) +
                                               " is not a prime below 2^31");
  }
  return {Kind::Prime, p};
}

std::string Field::name() const {
  return is_prime() ? "F_" + std::to_string(p) : "Q";
}

Scalar Scalar::from_int(const Field& field, long value) {
  if (field.is_prime()) return Scalar(Residue{reduce(mpz_class(value), field.p), field.p});
  return Scalar(mpq_class(value));
}

Scalar Scalar::from_fraction(const Field& field, const mpz_class& num, const mpz_class& den) {
  if (field.is_prime()) {
    std::uint32_t d = reduce(den, field.p);
    if (d == 0) {
      throw Error(ErrorKind::NotAUnit, "denominator " + den.get_str() + " vanishes in " + field.name());
    }
    Scalar n(Residue{reduce(num, field.p), field.p});
    return n / Scalar(Residue{d, field.p});
  }
  if (den == 0) throw Error(ErrorKind::NotAUnit, "zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(std::move(q));
}

Field Scalar::field() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return {Field::Kind::Prime, r->p};
  return Field::rational();
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
  return std::get<mpq_class>(value_) == 1;
}

bool Scalar::is_negative() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) < 0;
  return false;
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (value_.index() != rhs.value_.index() ||
      (value_.index() == 1 && std::get<Residue>(value_).p != std::get<Residue>(rhs.value_).p)) {
    throw Error(ErrorKind::FieldMismatch, field().name() + " vs " + rhs.field().name());
  }
}

Scalar Scalar::operator-() const {
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{r->value == 0 ? 0 : r->p - r->value, r->p});
  }
  return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = static_cast<std::uint32_t>((std::uint64_t{r->value} + rhs.residue()) % r->p);
  } else {
    std::get<mpq_class>(value_) += rhs.rational();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (auto* r = std::get_if<Residue>(&value_)) {
    r->value = static_cast<std::uint32_t>(std::uint64_t{r->value} * rhs.residue() % r->p);
  } else {
    std::get<mpq_class>(value_) *= rhs.rational();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::NotAUnit, "inverse of zero");
  if (const auto* r = std::get_if<Residue>(&value_)) {
    return Scalar(Residue{pow_mod(r->value, r->p - 2, r->p), r->p});
  }
  mpq_class q = 1 / std::get<mpq_class>(value_);
  q.canonicalize();
  return Scalar(std::move(q));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (const auto* r = std::get_if<Scalar::Residue>(&a.value_)) {
    const auto& s = std::get<Scalar::Residue>(b.value_);
    return r->p == s.p && r->value == s.value;
  }
  return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

std::string Scalar::to_string() const {
  if (const auto* r = std::get_if<Residue>(&value_)) return std::to_string(r->value);
  return std::get<mpq_class>(value_).get_str();
}

}  // namespace arclift
