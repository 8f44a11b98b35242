#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arclift/arcs.hpp"
#include "arclift/desing.hpp"
#include "arclift/problem.hpp"
#include "arclift/text.hpp"

namespace arclift::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(ARCLIFT_FIXTURE_DIR) + "/" + name + ".json";
}

inline Problem fixture(const std::string& name) { return load_problem_file(fixture_path(name)); }

inline SmoothModel model_of(const std::string& name) { return build_model(fixture(name)); }

inline Series ser(const std::string& text, const BaseRing& ring) { return parse_series(text, ring); }

inline SeriesVector sers(const std::string& text, const BaseRing& ring) { return parse_series_list(text, ring); }

/// Y1^a - Y2^b through y' = (x^b, x^a), optionally with Y3 = Y1*Y2 as a
/// second equation; the order condition is met with c = (a-1)b + 1.
inline Problem monomial_curve(int a, int b, bool with_product, const char* field = R"({"type": "Q"})") {
  int c = (a - 1) * b + 1;
  std::string ideal = "\"Y1^" + std::to_string(a) + " - Y2^" + std::to_string(b) + "\"";
  std::string jet = "\"x^" + std::to_string(b) + "\", \"x^" + std::to_string(a) + "\"";
  std::string text = std::string("{\"field\": ") + field + ", ";
  if (with_product) {
    text += "\"n\": 3, \"ideal\": [" + ideal + ", \"Y3 - Y1*Y2\"], \"f\": [1, 2], \"minor_cols\": [1, 3], \"jet\": [" +
            jet + ", \"x^" + std::to_string(a + b) + "\"], ";
  } else {
    text += "\"n\": 2, \"ideal\": [" + ideal + "], \"f\": [1], \"minor_cols\": [1], \"jet\": [" + jet + "], ";
  }
  text += "\"c\": " + std::to_string(c) + ", \"jet_prec\": " + std::to_string(2 * c + 1) + "}";
  return load_problem(nlohmann::json::parse(text));
}

/// Ten monomial curves with shapes drawn from a fixed seed, kept to
/// (a-1)b <= 12 so that 2c+1 stays well below the working precision.
inline std::vector<Problem> monomial_family(std::uint64_t seed = 2024) {
  std::mt19937_64 engine(seed);
  std::vector<Problem> out;
  while (out.size() < 10) {
    int a = 2 + static_cast<int>(engine() % 4);
    int b = 2 + static_cast<int>(engine() % 6);
    bool with_product = engine() % 2 == 1;
    if ((a - 1) * b > 12) continue;
    out.push_back(monomial_curve(a, b, with_product));
  }
  return out;
}

}  // namespace arclift::testing
