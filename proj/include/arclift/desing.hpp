#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arclift/matrix.hpp"
#include "arclift/poly.hpp"
#include "arclift/problem.hpp"
#include "arclift/series.hpp"

namespace arclift {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of the input checks, in order: structure (jet precision against
/// c), certificate identity, I(y') = 0 mod x^(2c+1), and ord P(y') < c.
struct ValidationReport {
  int c = 0;
  bool c_was_given = false;
  /// ord(P(y') mod x^(2c+1)); empty when P(y') vanishes there.
  std::optional<int> e;
  bool structure_ok = true;
  bool certificate_ok = false;
  bool morphism_ok = false;
  bool order_ok = false;
  std::vector<Check> checks;

  bool all_passed() const { return structure_ok && certificate_ok && morphism_ok && order_ok; }
  /// 0 all pass, 2 certificate/order failure, 1 structural or morphism failure.
  int exit_code() const;
};

ValidationReport validate_problem(const Problem& problem);

/// Internal variable order: the minor columns first, then the remaining
/// columns ascending.  order[k] is the original (0-based) Y index placed at
/// internal position k.
class ColumnOrder {
 public:
  ColumnOrder() = default;
  ColumnOrder(std::span<const int> minor_cols, int n);

  const std::vector<int>& order() const { return order_; }
  bool is_identity() const;

  Poly to_internal(const Poly& p) const;
  Poly to_external(const Poly& p) const;
  SeriesVector to_internal(std::span<const Series> v) const;
  SeriesVector to_external(std::span<const Series> v) const;

 private:
  std::vector<std::size_t> slot_map(bool to_internal, int n) const;

  std::vector<int> order_;
};

/// Y-slots filled from `ys`, T-slots from `ts` (either may be empty).
std::vector<std::optional<Series>> make_point(int n, std::span<const Series> ys, std::span<const Series> ts);

/// The r x r minor of the Jacobian of f on the given columns.
Poly jacobian_minor(std::span<const Poly> f, int n, std::span<const int> cols);

struct NormalizedCertificate {
  int shift = 0;
  Poly n_norm;
  Poly p;
  Series d{BaseRing{}};
  Certificate cert;
};

/// N_norm = x^(c-e) N, P = N_norm M, d = P(y'), cofactors scaled alike.
/// Throws OrderTooHigh when e >= c.
NormalizedCertificate normalize_certificate(const Certificate& cert, const Poly& minor, std::span<const Series> jet,
                                            int e, int c);

/// Jacobian of f (minor in the first r columns) with (0 | Id_{n-r}) appended.
PolyMatrix build_border(std::span<const Poly> f, int n);

struct GMatrices {
  PolyMatrix g;
  SeriesMatrix gy;
};

/// G = N_norm adj(H), checked against GH = HG = P Id; Gy = G(y').
GMatrices compute_G(const PolyMatrix& h, const Poly& n_norm, const Poly& p, std::span<const Series> jet);

struct TaylorData {
  SeriesVector a;
  std::vector<Poly> q;
};

/// Splits f(y' + d Gy T) = d^2 (a + T_[r] + Q) with a = f(y')/d^2 and Q of
/// T-degree >= 2.
TaylorData taylor_decompose(std::span<const Poly> f, std::span<const Series> jet, const Series& d,
                            const SeriesMatrix& gy);

/// Y_i -> y'_i + sum_j (d Gy)_ij T_j.
std::vector<Poly> lift_images(std::span<const Series> jet, const Series& d, const SeriesMatrix& gy);

/// The standard-smooth model: equations g = a + T_[r] + Q in the T's,
/// localized at loc_s * loc_s_prime, with Y = y' + d Gy T.
///
/// All polynomials and vectors are in internal coordinates (see ColumnOrder);
/// T_1..T_r are bound by g, T_{r+1}..T_n are free.
struct SmoothModel {
  BaseRing ring;
  int n = 0;
  int r = 0;
  int c = 0;
  int e = 0;
  ColumnOrder columns;
  std::vector<Poly> ideal;
  std::vector<Poly> f;
  Certificate cert;
  Poly minor;
  SeriesVector jet;
  int shift = 0;
  Poly n_norm;
  Poly p;
  Series d{BaseRing{}};
  PolyMatrix h{BaseRing{}, 1, 0, 0};
  PolyMatrix g{BaseRing{}, 1, 0, 0};
  SeriesMatrix gy{BaseRing{}, 0, 0};
  SeriesVector a;
  std::vector<Poly> q;
  std::vector<Poly> eqs;
  Poly loc_s;
  Poly loc_s_prime;

  int param_count() const { return n - r; }
  /// Precision at which Q and the Hensel solutions are known: N_work - 2c.
  int lift_prec() const { return ring.n_work - 2 * c; }
};

/// Validates, then runs the construction.  Validation failures raise
/// InvalidProblem (structure, morphism) or OrderTooHigh (certificate, order).
SmoothModel build_model(const Problem& problem);

struct VerificationReport {
  std::vector<Check> checks;
  bool all_passed() const;
};

/// Re-derives every identity of the construction from the model's outputs.
VerificationReport verify_model(const SmoothModel& model);

}  // namespace arclift
