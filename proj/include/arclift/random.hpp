#pragma once

#include <cstdint>
#include <random>

#include "arclift/series.hpp"

namespace arclift {

/// Deterministic draws from std::mt19937_64, reduced with a plain modulo so
/// any implementation of the same generator reproduces them.
///
/// Over Q a coefficient is n/d with n in [-9, 9], d in [1, 3]; over F_p it
/// is uniform in [0, p).  Series have order >= 1 and degree <= max_degree.
class SeededDraw {
 public:
  explicit SeededDraw(std::uint64_t seed) : engine_(seed) {}

  Scalar scalar(const Field& field);
  Series series(const BaseRing& ring, int max_degree = 6);
  SeriesVector series_vector(const BaseRing& ring, int count, int max_degree = 6);

 private:
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  std::mt19937_64 engine_;
};

}  // namespace arclift
