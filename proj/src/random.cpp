#include "arclift/random.hpp"

namespace arclift {

Scalar SeededDraw::scalar(const Field& field) {
  if (field.is_prime()) return Scalar::from_int(field, static_cast<long>(below(field.p)));
  long num = static_cast<long>(below(19)) - 9;
  long den = static_cast<long>(below(3)) + 1;
  return Scalar::from_fraction(field, num, den);
}

Series SeededDraw::series(const BaseRing& ring, int max_degree) {
  int degree = 1 + static_cast<int>(below(static_cast<std::uint64_t>(max_degree)));
  std::vector<Scalar> coeffs(static_cast<std::size_t>(degree) + 1, Scalar::zero(ring.field));
  for (int k = 1; k <= degree; ++k) coeffs[static_cast<std::size_t>(k)] = scalar(ring.field);
  return Series(ring, std::move(coeffs), ring.n_work);
}

SeriesVector SeededDraw::series_vector(const BaseRing& ring, int count, int max_degree) {
  SeriesVector out;
  for (int i = 0; i < count; ++i) out.push_back(series(ring, max_degree));
  return out;
}

}  // namespace arclift
