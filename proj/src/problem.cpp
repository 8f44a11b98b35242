#include "arclift/problem.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "arclift/error.hpp"
#include "arclift/text.hpp"

namespace arclift {

using nlohmann::json;

std::vector<Poly> Problem::f() const {
  std::vector<Poly> out;
  out.reserve(f_idx.size());
  for (int i : f_idx) out.push_back(ideal.at(static_cast<std::size_t>(i)));
  return out;
}

void Problem::check_structure() const {
  auto invalid = [](const std::string& why) { throw Error(ErrorKind::InvalidProblem, why); };
  if (n < 1) invalid("n must be at least 1");
  if (ideal.empty()) invalid("ideal has no generators");
  if (f_idx.empty()) invalid("f selects no generators");
  if (r() > n) invalid("f has more equations than variables");
  if (minor_cols.size() != f_idx.size()) invalid("minor_cols must list exactly r columns");
  std::set<int> seen_f(f_idx.begin(), f_idx.end());
  if (seen_f.size() != f_idx.size()) invalid("f indices repeat");
  for (int i : f_idx) {
    if (i < 0 || i >= static_cast<int>(ideal.size())) invalid("f index out of range");
  }
  std::set<int> seen_cols(minor_cols.begin(), minor_cols.end());
  if (seen_cols.size() != minor_cols.size()) invalid("minor_cols repeat");
  for (int j : minor_cols) {
    if (j < 0 || j >= n) invalid("minor column out of range");
  }
  if (jet.size() != static_cast<std::size_t>(n)) invalid("jet must have n coordinates");
  if (cert.cofactors.size() != ideal.size()) invalid("certificate needs one cofactor row per ideal generator");
  for (const auto& row : cert.cofactors) {
    if (row.size() != f_idx.size()) invalid("certificate rows need r cofactors");
  }
  if (c && *c < 1) invalid("c must be at least 1");
  if (jet_prec < 1) invalid("jet_prec must be positive");
  if (jet_prec > ring.n_work) invalid("jet_prec exceeds the working precision");
  for (const auto& p : ideal) {
    if (p.uses_space(Var::Space::T)) invalid("ideal generators may not use T variables");
    if (mode == ProblemMode::Variety) {
      for (const auto& [e, coeff] : p.terms()) {
        if (coeff.size() > 1) invalid("variety mode: ideal generators may not mention x");
      }
    }
  }
}

Certificate trivial_certificate(const BaseRing& ring, int n, const std::vector<int>& f_idx, std::size_t ideal_size) {
  Certificate cert{Poly::from_int(ring, n, 1), {}};
  cert.cofactors.assign(ideal_size, std::vector<Poly>(f_idx.size(), Poly(ring, n)));
  for (std::size_t k = 0; k < f_idx.size(); ++k) {
    cert.cofactors[static_cast<std::size_t>(f_idx[k])][k] = Poly::from_int(ring, n, 1);
  }
  return cert;
}

namespace {

[[noreturn]] void parse_fail(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

const json& field_of(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

int int_of(const json& value, const std::string& where) {
  if (!value.is_number_integer()) parse_fail("field \"" + where + "\" must be an integer");
  return value.get<int>();
}

std::vector<int> indices_of(const json& value, const std::string& where) {
  if (!value.is_array()) parse_fail("field \"" + where + "\" must be an array of integers");
  std::vector<int> out;
  for (const auto& v : value) out.push_back(int_of(v, where) - 1);
  return out;
}

std::string string_of(const json& value, const std::string& where) {
  if (!value.is_string()) parse_fail("field \"" + where + "\" must hold strings");
  return value.get<std::string>();
}

Poly poly_of(const json& value, const std::string& where, const BaseRing& ring, int n) {
  std::string text = string_of(value, where);
  try {
    return parse_poly(text, ring, VarSpace{n, true, false, true});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownVariable) {
      parse_fail("field \"" + where + "\": " + e.detail());
    }
    throw;
  }
}

int default_n_work() {
  if (const char* env = std::getenv("ARCLIFT_NWORK")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0 && value <= 100000) return static_cast<int>(value);
    parse_fail("ARCLIFT_NWORK must be a positive integer");
  }
  return kDefaultWorkingPrecision;
}

}  // namespace

Problem load_problem(const json& doc, std::optional<int> n_work_override) {
  if (!doc.is_object()) parse_fail("problem file must be a JSON object");
  Problem p;

  const json& field = field_of(doc, "field");
  if (!field.is_object() || !field.contains("type")) parse_fail("field \"field\" needs a \"type\"");
  std::string type = string_of(field.at("type"), "field.type");
  if (type == "Q") {
    p.ring.field = Field::rational();
  } else if (type == "Fp") {
    int prime = int_of(field_of(field, "p"), "field.p");
    if (prime < 2) throw Error(ErrorKind::InvalidProblem, "field.p must be a prime");
    p.ring.field = Field::prime(static_cast<std::uint32_t>(prime));
  } else {
    parse_fail("field.type must be \"Q\" or \"Fp\"");
  }

  p.ring.n_work = doc.contains("n_work") ? int_of(doc.at("n_work"), "n_work") : default_n_work();
  if (n_work_override) p.ring.n_work = *n_work_override;
  if (p.ring.n_work < 1) throw Error(ErrorKind::InvalidProblem, "n_work must be positive");

  p.n = int_of(field_of(doc, "n"), "n");
  if (p.n < 1) throw Error(ErrorKind::InvalidProblem, "n must be at least 1");

  if (doc.contains("mode")) {
    std::string mode = string_of(doc.at("mode"), "mode");
    if (mode == "dvr") {
      p.mode = ProblemMode::Dvr;
    } else if (mode == "variety") {
      p.mode = ProblemMode::Variety;
    } else {
      parse_fail("mode must be \"dvr\" or \"variety\"");
    }
  }

  const json& ideal = field_of(doc, "ideal");
  if (!ideal.is_array()) parse_fail("field \"ideal\" must be an array");
  for (std::size_t j = 0; j < ideal.size(); ++j) {
    p.ideal.push_back(poly_of(ideal[j], "ideal[" + std::to_string(j + 1) + "]", p.ring, p.n));
  }
  p.f_idx = indices_of(field_of(doc, "f"), "f");
  p.minor_cols = indices_of(field_of(doc, "minor_cols"), "minor_cols");

  if (doc.contains("c") && !doc.at("c").is_null()) p.c = int_of(doc.at("c"), "c");

  p.jet_prec = int_of(field_of(doc, "jet_prec"), "jet_prec");
  const json& jet = field_of(doc, "jet");
  if (!jet.is_array()) parse_fail("field \"jet\" must be an array");
  for (std::size_t i = 0; i < jet.size(); ++i) {
    std::string where = "jet[" + std::to_string(i + 1) + "]";
    Series y(p.ring);
    try {
      y = parse_series(string_of(jet[i], where), p.ring);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::UnknownVariable) {
        parse_fail("field \"" + where + "\": " + e.detail());
      }
      throw;
    }
    if (y.size() > p.jet_prec) {
      throw Error(ErrorKind::InvalidProblem, where + " has terms at or beyond x^jet_prec");
    }
    p.jet.push_back(Series(p.ring, std::vector<Scalar>(y.coeffs().begin(), y.coeffs().end()), p.ring.n_work));
  }

  if (doc.contains("certificate")) {
    const json& cert = doc.at("certificate");
    if (!cert.is_object()) parse_fail("field \"certificate\" must be an object");
    p.cert.n_poly = poly_of(field_of(cert, "N"), "certificate.N", p.ring, p.n);
    const json& rows = field_of(cert, "cofactors");
    if (!rows.is_array()) parse_fail("certificate.cofactors must be an array of arrays");
    p.cert.cofactors.clear();
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!rows[j].is_array()) parse_fail("certificate.cofactors must be an array of arrays");
      std::vector<Poly> row;
      for (std::size_t k = 0; k < rows[j].size(); ++k) {
        row.push_back(poly_of(rows[j][k], "certificate.cofactors[" + std::to_string(j + 1) + "][" +
                                              std::to_string(k + 1) + "]",
                              p.ring, p.n));
      }
      p.cert.cofactors.push_back(std::move(row));
    }
  } else {
    std::vector<int> sorted = p.f_idx;
    std::sort(sorted.begin(), sorted.end());
    bool complete = sorted.size() == p.ideal.size();
    for (std::size_t i = 0; complete && i < sorted.size(); ++i) complete = sorted[i] == static_cast<int>(i);
    if (!complete) throw Error(ErrorKind::InvalidProblem, "a certificate is required unless f lists the whole ideal");
    for (int i : p.f_idx) {
      if (i < 0 || i >= static_cast<int>(p.ideal.size())) throw Error(ErrorKind::InvalidProblem, "f index out of range");
    }
    p.cert = trivial_certificate(p.ring, p.n, p.f_idx, p.ideal.size());
  }

  p.check_structure();
  return p;
}

Problem load_problem_file(const std::filesystem::path& path, std::optional<int> n_work_override) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    parse_fail(path.string() + ": " + e.what());
  }
  return load_problem(doc, n_work_override);
}

}  // namespace arclift
