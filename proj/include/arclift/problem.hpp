#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arclift/poly.hpp"
#include "arclift/series.hpp"

namespace arclift {

/// Witness that N lies in the colon ideal ((f) : I):
/// N * I_j = sum_k cofactors[j][k] * f_k for every ideal generator I_j.
struct Certificate {
  Poly n_poly;
  std::vector<std::vector<Poly>> cofactors;
};

enum class ProblemMode { Dvr, Variety };

/// Input of the construction: B = A[Y]/I, a subsystem f of I, a Jacobian
/// minor, the colon certificate, and a truncated arc y' known mod x^jet_prec.
///
/// Indices are 0-based here; the problem file uses 1-based indices.
struct Problem {
  BaseRing ring;
  int n = 1;
  std::vector<Poly> ideal;
  std::vector<int> f_idx;
  std::vector<int> minor_cols;
  Certificate cert;
  std::optional<int> c;
  /// Representatives y' in A^n of the jet; exact up to n_work.
  SeriesVector jet;
  int jet_prec = 0;
  ProblemMode mode = ProblemMode::Dvr;

  int r() const { return static_cast<int>(f_idx.size()); }
  std::vector<Poly> f() const;

  /// Structural checks (index ranges, shapes); throws InvalidProblem.
  void check_structure() const;
};

/// Certificate N = 1 with identity cofactors; valid when f lists every
/// generator of the ideal.
Certificate trivial_certificate(const BaseRing& ring, int n, const std::vector<int>& f_idx, std::size_t ideal_size);

/// Reads the JSON problem format.  Malformed JSON, missing fields and bad
/// polynomial text raise ParseError; inconsistent content raises
/// InvalidProblem.  `n_work_override` replaces the file's n_work.
Problem load_problem(const nlohmann::json& doc, std::optional<int> n_work_override = std::nullopt);
Problem load_problem_file(const std::filesystem::path& path, std::optional<int> n_work_override = std::nullopt);

}  // namespace arclift
