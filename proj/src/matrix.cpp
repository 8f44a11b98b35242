#include "arclift/matrix.hpp"

#include <unordered_map>

#include "arclift/error.hpp"

namespace arclift {

PolyMatrix::PolyMatrix(const BaseRing& ring, int n_vars, std::size_t rows, std::size_t cols)
    : ring_(ring), n_vars_(n_vars), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring, n_vars)) {}

PolyMatrix PolyMatrix::identity(const BaseRing& ring, int n_vars, std::size_t size) {
  PolyMatrix m(ring, n_vars, size, size);
  for (std::size_t i = 0; i < size; ++i) m.at(i, i) = Poly::from_int(ring, n_vars, 1);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::NamespaceMismatch, "matrix shapes do not chain");
  PolyMatrix out(a.ring_, a.n_vars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Poly acc(a.ring_, a.n_vars_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
        acc += a.at(i, k) * b.at(k, j);
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

PolyMatrix operator*(const Poly& s, const PolyMatrix& m) {
  PolyMatrix out = m;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {

// Determinant of the submatrix on `rows` x `cols`, expanding along the first
// remaining row; memoized on the column subset.
class MinorExpander {
 public:
  MinorExpander(const PolyMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
      : m_(m), rows_(std::move(rows)), cols_(std::move(cols)) {}

  Poly run() { return expand(0, (std::uint64_t{1} << cols_.size()) - 1); }

 private:
  Poly expand(std::size_t depth, std::uint64_t mask) {
    if (depth == rows_.size()) return Poly::from_int(m_.ring(), m_.n_vars(), 1);
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    Poly total(m_.ring(), m_.n_vars());
    bool negate = false;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (!(mask & (std::uint64_t{1} << c))) continue;
      const Poly& entry = m_.at(rows_[depth], cols_[c]);
      if (!entry.is_zero()) {
        Poly term = entry * expand(depth + 1, mask & ~(std::uint64_t{1} << c));
        total += negate ? -term : term;
      }
      negate = !negate;
    }
    memo_.emplace(mask, total);
    return total;
  }

  const PolyMatrix& m_;
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
  std::unordered_map<std::uint64_t, Poly> memo_;
};

std::vector<std::size_t> all_but(std::size_t size, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size; ++i) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

}  // namespace

Poly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NamespaceMismatch, "determinant of a non-square matrix");
  if (m.rows() > 60) throw Error(ErrorKind::BudgetExceeded, "matrix too large for cofactor expansion");
  return MinorExpander(m, all_but(m.rows(), m.rows()), all_but(m.cols(), m.cols())).run();
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NamespaceMismatch, "adjugate of a non-square matrix");
  std::size_t n = m.rows();
  PolyMatrix adj(m.ring(), m.n_vars(), n, n);
  if (n == 1) {
    adj.at(0, 0) = Poly::from_int(m.ring(), m.n_vars(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^(i+j) * minor with row j and column i removed
      Poly minor = MinorExpander(m, all_but(n, j), all_but(n, i)).run();
      adj.at(i, j) = ((i + j) % 2 == 0) ? minor : -minor;
    }
  }
  return adj;
}

PolyMatrix jacobian(std::span<const Poly> fs, int n) {
  if (fs.empty()) throw Error(ErrorKind::InvalidProblem, "jacobian of an empty system");
  PolyMatrix jac(fs.front().ring(), n, fs.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (int j = 1; j <= n; ++j) jac.at(i, static_cast<std::size_t>(j - 1)) = fs[i].diff(Var::y(j));
  }
  return jac;
}

SeriesMatrix::SeriesMatrix(const BaseRing& ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Series(ring)) {}

SeriesVector SeriesMatrix::apply(std::span<const Series> v) const {
  if (v.size() != cols_) throw Error(ErrorKind::NamespaceMismatch, "vector length does not match matrix");
  SeriesVector out(rows_, Series(ring_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  }
  return out;
}

SeriesMatrix SeriesMatrix::scaled(const Series& s) const {
  SeriesMatrix out = *this;
  for (auto& e : out.entries_) e = s * e;
  return out;
}

SeriesMatrix evaluate(const PolyMatrix& m, std::span<const std::optional<Series>> point) {
  SeriesMatrix out(m.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).eval(point);
  }
  return out;
}

SeriesVector solve_unit_system(SeriesMatrix j, SeriesVector b) {
  std::size_t n = j.rows();
  if (j.cols() != n || b.size() != n) throw Error(ErrorKind::NamespaceMismatch, "non-square linear system");
  if (n == 0) return {};
  for (std::size_t k = 0; k < n; ++k) {
    Series pivot_inv = j.at(k, k).inv_unit();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (j.at(i, k).is_zero()) continue;
      Series factor = j.at(i, k) * pivot_inv;
      for (std::size_t c = k; c < n; ++c) j.at(i, c) -= factor * j.at(k, c);
      b[i] -= factor * b[k];
    }
  }
  SeriesVector z(n, b.front());
  for (std::size_t k = n; k-- > 0;) {
    Series acc = b[k];
    for (std::size_t c = k + 1; c < n; ++c) acc -= j.at(k, c) * z[c];
    z[k] = acc * j.at(k, k).inv_unit();
  }
  return z;
}

}  // namespace arclift
