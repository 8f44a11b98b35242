#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arclift/poly.hpp"
#include "arclift/series.hpp"

namespace arclift {

/// Dense row-major matrix of polynomials sharing one namespace.
class PolyMatrix {
 public:
  PolyMatrix(const BaseRing& ring, int n_vars, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const BaseRing& ring, int n_vars, std::size_t size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const BaseRing& ring() const { return ring_; }
  int n_vars() const { return n_vars_; }

  Poly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& s, const PolyMatrix& m);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  BaseRing ring_;
  int n_vars_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> entries_;
};

/// Determinant by Laplace expansion with memoized minors.
Poly det(const PolyMatrix& m);
/// Transposed cofactor matrix: m * adjugate(m) = adjugate(m) * m = det(m) * Id.
PolyMatrix adjugate(const PolyMatrix& m);

/// r x n Jacobian (d f_i / d Y_j).
PolyMatrix jacobian(std::span<const Poly> fs, int n);

/// Dense matrix of series, e.g. a polynomial matrix evaluated at a jet.
class SeriesMatrix {
 public:
  SeriesMatrix(const BaseRing& ring, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Series& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Series& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  SeriesVector apply(std::span<const Series> v) const;
  SeriesMatrix scaled(const Series& s) const;

 private:
  BaseRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Series> entries_;
};

SeriesMatrix evaluate(const PolyMatrix& m, std::span<const std::optional<Series>> point);

/// Solves J z = b for a square J whose diagonal stays a unit during
/// elimination (J = Id mod x).  Throws NotAUnit otherwise.
SeriesVector solve_unit_system(SeriesMatrix j, SeriesVector b);

}  // namespace arclift
