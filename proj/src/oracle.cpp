#include "arclift/oracle.hpp"

#include <algorithm>

#include "arclift/error.hpp"

namespace arclift {

namespace {

using Coeffs = std::vector<std::uint32_t>;

struct NativeTerm {
  Coeffs coeff;
  std::vector<std::uint32_t> exponents;
};

class Truncated {
 public:
  Truncated(int m, std::uint32_t p) : m_(static_cast<std::size_t>(m)), p_(p) {}

  Coeffs mul(const Coeffs& a, const Coeffs& b) const {
    Coeffs out(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < m_; ++j) {
        if (b[j] == 0) continue;
        out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p_);
      }
    }
    return out;
  }

  void add_into(Coeffs& acc, const Coeffs& v) const {
    for (std::size_t i = 0; i < m_; ++i) acc[i] = static_cast<std::uint32_t>((std::uint64_t{acc[i]} + v[i]) % p_);
  }

 private:
  std::size_t m_;
  std::uint32_t p_;
};

Coeffs to_native(const Series& s, int m) {
  Coeffs out(static_cast<std::size_t>(m), 0);
  for (int k = 0; k < std::min(m, s.size()); ++k) out[static_cast<std::size_t>(k)] = s.coeff(k).residue();
  return out;
}

bool vanishes(const std::vector<NativeTerm>& gen, const Jet& y, const Truncated& arith, std::vector<std::vector<Coeffs>>& powers,
              int m) {
  Coeffs total(static_cast<std::size_t>(m), 0);
  for (const auto& term : gen) {
    Coeffs value = term.coeff;
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::uint32_t e = term.exponents[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      while (cache.size() <= e) cache.push_back(arith.mul(cache.back(), y[i]));
      value = arith.mul(value, cache[e]);
    }
    arith.add_into(total, value);
  }
  return std::all_of(total.begin(), total.end(), [](std::uint32_t v) { return v == 0; });
}

}  // namespace

bool JetSet::contains(const Jet& jet) const { return std::binary_search(jets.begin(), jets.end(), jet); }

std::vector<std::string> JetSet::lines() const {
  std::vector<std::string> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(jet_to_string(j));
  return out;
}

std::string jet_to_string(const Jet& jet) {
  std::string out = "(";
  for (std::size_t i = 0; i < jet.size(); ++i) {
    if (i > 0) out += ", ";
    std::string coord;
    for (std::size_t k = 0; k < jet[i].size(); ++k) {
      std::uint32_t v = jet[i][k];
      if (v == 0) continue;
      if (!coord.empty()) coord += " + ";
      std::string power = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
      if (power.empty()) {
        coord += std::to_string(v);
      } else if (v == 1) {
        coord += power;
      } else {
        coord += std::to_string(v) + "*" + power;
      }
    }
    out += coord.empty() ? "0" : coord;
  }
  return out + ")";
}

Jet truncate_arc(std::span<const Series> arc, int m) {
  Jet out;
  for (const auto& s : arc) {
    if (!s.field().is_prime()) throw Error(ErrorKind::FieldMismatch, "jets are enumerated over F_p only");
    if (s.prec() < m) {
      throw Error(ErrorKind::PrecisionExhausted, "arc known to x^" + std::to_string(s.prec()) + " only");
    }
    out.push_back(to_native(s, m));
  }
  return out;
}

JetSet oracle_enumerate(const Problem& problem, int c, int m) {
  const Field& field = problem.ring.field;
  if (!field.is_prime()) throw Error(ErrorKind::InvalidProblem, "the jet oracle needs a finite field");
  const int fixed = 2 * c + 1;
  const int n = problem.n;
  const int free_per_coord = std::max(0, m - fixed);
  const int free_count = n * free_per_coord;
  if (m < 1 || free_count > kOracleMaxFreeCoefficients) {
    throw Error(ErrorKind::BudgetExceeded, std::to_string(free_count) + " free coefficients exceed the budget of " +
                                               std::to_string(kOracleMaxFreeCoefficients));
  }
  const std::uint32_t p = field.p;
  std::uint64_t candidates = 1;
  for (int i = 0; i < free_count; ++i) {
    candidates *= p;
    if (candidates > kOracleMaxCandidates) {
      throw Error(ErrorKind::BudgetExceeded, std::to_string(p) + "^" + std::to_string(free_count) +
                                                 " candidate jets exceed " + std::to_string(kOracleMaxCandidates));
    }
  }

  std::vector<std::vector<NativeTerm>> gens;
  for (const auto& g : problem.ideal) {
    std::vector<NativeTerm> terms;
    for (const auto& [exps, coeff] : g.terms()) {
      terms.push_back({to_native(coeff, m), Exponents(exps.begin(), exps.begin() + n)});
    }
    gens.push_back(std::move(terms));
  }

  Jet y;
  for (const auto& s : problem.jet) y.push_back(to_native(s.truncated(std::min(fixed, s.prec())), m));
  Truncated arith(m, p);
  Coeffs one(static_cast<std::size_t>(m), 0);
  one[0] = 1;

  JetSet out;
  out.m = m;
  out.c = c;
  out.p = p;
  out.candidates = candidates;
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(free_count), 0);
  while (true) {
    for (int idx = 0; idx < free_count; ++idx) {
      y[static_cast<std::size_t>(idx / free_per_coord)][static_cast<std::size_t>(fixed + idx % free_per_coord)] =
          digits[static_cast<std::size_t>(idx)];
    }
    std::vector<std::vector<Coeffs>> powers(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = {one, y[i]};
    bool in_set = std::all_of(gens.begin(), gens.end(),
                              [&](const auto& gen) { return vanishes(gen, y, arith, powers, m); });
    if (in_set) out.jets.push_back(y);

    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  std::sort(out.jets.begin(), out.jets.end());
  return out;
}

}  // namespace arclift
