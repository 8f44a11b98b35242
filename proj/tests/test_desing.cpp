#include <gtest/gtest.h>

#include "arclift/desing.hpp"
#include "arclift/error.hpp"
#include "support.hpp"

using namespace arclift;
using namespace arclift::testing;

namespace {

Problem inline_problem(const std::string& text) { return load_problem(nlohmann::json::parse(text)); }

bool check_passed(const ValidationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return c.passed;
  }
  ADD_FAILURE() << "no check " << name;
  return false;
}

}  // namespace

TEST(Validate, CuspPasses) {
  ValidationReport rep = validate_problem(fixture("cusp"));
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.c, 4);
  ASSERT_TRUE(rep.e.has_value());
  EXPECT_EQ(*rep.e, 3);
  EXPECT_EQ(rep.exit_code(), 0);
}

TEST(Validate, OrderConditionFailsAtCThree) {
  ValidationReport rep = validate_problem(fixture("cusp_c3"));
  EXPECT_FALSE(check_passed(rep, "order"));
  EXPECT_TRUE(check_passed(rep, "certificate"));
  EXPECT_EQ(rep.exit_code(), 2);
}

TEST(Validate, MorphismIsCheckedModuloTwoCPlusOne) {
  Problem p = fixture("cusp");
  // f(x^3, x^2 + x^4) = -3x^8 - 3x^10 - x^12 has order 8 < 9.
  p.jet[1] = ser("x^2 + x^4", p.ring);
  EXPECT_FALSE(check_passed(validate_problem(p), "morphism"));
  // f(x^3, x^2 + x^6) starts at x^10, so only the part below x^9 matters.
  p.jet[1] = ser("x^2 + x^6", p.ring);
  ValidationReport rep = validate_problem(p);
  EXPECT_TRUE(check_passed(rep, "morphism"));
  EXPECT_TRUE(check_passed(rep, "order"));
  EXPECT_EQ(*rep.e, 3);
}

TEST(Validate, JetOffTheCurveFailsMorphismCheck) {
  ValidationReport rep = validate_problem(fixture("cusp_bad_jet"));
  EXPECT_FALSE(check_passed(rep, "morphism"));
  EXPECT_EQ(rep.exit_code(), 1);
}

TEST(Validate, MinimalCIsChosenWhenOmitted) {
  ValidationReport rep = validate_problem(fixture("cusp_auto_c"));
  EXPECT_FALSE(rep.c_was_given);
  EXPECT_EQ(rep.c, 4);
  EXPECT_TRUE(rep.all_passed());
}

TEST(Validate, WrongCofactorFailsCertificate) {
  Problem p = inline_problem(R"({"field": {"type": "Q"}, "n": 3, "ideal": ["Y1*Y3", "Y2*Y3"], "f": [1],
    "minor_cols": [3], "certificate": {"N": "Y1", "cofactors": [["Y1"], ["Y1"]]}, "c": 3,
    "jet": ["x", "x^2", "0"], "jet_prec": 7})");
  ValidationReport rep = validate_problem(p);
  EXPECT_FALSE(check_passed(rep, "certificate"));
  EXPECT_EQ(rep.exit_code(), 2);
  EXPECT_THROW(build_model(p), Error);
}

TEST(Validate, ShortJetIsStructural) {
  Problem p = fixture("cusp");
  p.jet_prec = 8;
  ValidationReport rep = validate_problem(p);
  EXPECT_FALSE(rep.structure_ok);
  EXPECT_EQ(rep.exit_code(), 1);
}

TEST(Load, RejectsJetTermsBeyondItsPrecision) {
  EXPECT_THROW(inline_problem(R"({"field": {"type": "Q"}, "n": 2, "ideal": ["Y1^2 - Y2^3"], "f": [1],
    "minor_cols": [1], "c": 4, "jet": ["x^3 + x^9", "x^2"], "jet_prec": 9})"),
               Error);
}

TEST(Load, VarietyModeKeepsXOutOfTheIdeal) {
  try {
    inline_problem(R"({"field": {"type": "Q"}, "n": 2, "ideal": ["Y1*Y2 - x^6"], "f": [1], "minor_cols": [1],
      "c": 5, "jet": ["x^2", "x^4"], "jet_prec": 11, "mode": "variety"})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::InvalidProblem || e.kind() == ErrorKind::UnknownVariable) << e.what();
  }
  EXPECT_TRUE(verify_model(model_of("twisted_variety")).all_passed());
}

TEST(Load, MissingCertificateNeedsFullSubsystem) {
  EXPECT_THROW(inline_problem(R"({"field": {"type": "Q"}, "n": 3, "ideal": ["Y1*Y3", "Y2*Y3"], "f": [1],
    "minor_cols": [3], "c": 3, "jet": ["x", "x^2", "0"], "jet_prec": 7})"),
               Error);
}

TEST(Model, CuspConstruction) {
  SmoothModel m = model_of("cusp");
  const BaseRing& ring = m.ring;
  EXPECT_EQ(m.shift, 1);
  EXPECT_EQ(m.n_norm.to_string(), "x");
  EXPECT_EQ(m.p.to_string(), "2*x*Y1");
  EXPECT_EQ(m.d.to_string(false), "2*x^4");
  EXPECT_EQ(m.gy.at(0, 0), ser("x", ring));
  EXPECT_EQ(m.gy.at(0, 1), ser("3*x^5", ring));
  EXPECT_TRUE(m.gy.at(1, 0).is_zero());
  EXPECT_EQ(m.gy.at(1, 1), ser("2*x^4", ring));
  EXPECT_TRUE(m.a[0].is_zero());
  EXPECT_EQ(m.q[0].to_string(), "x^2*T1^2 + 6*x^6*T1*T2 - 3*x^10*T2^2 - 16*x^16*T2^3");
  EXPECT_EQ(m.eqs[0].to_string(), "T1 + x^2*T1^2 + 6*x^6*T1*T2 - 3*x^10*T2^2 - 16*x^16*T2^3");
  EXPECT_EQ(m.loc_s.to_string(), "1 + 2*x^2*T1 + 6*x^6*T2");
  EXPECT_EQ(m.loc_s_prime.to_string(), "1 + 2*x^2*T1 + 6*x^6*T2");
  EXPECT_EQ(m.param_count(), 1);
}

TEST(Model, NodeConstruction) {
  SmoothModel m = model_of("node");
  const BaseRing& ring = m.ring;
  EXPECT_EQ(m.d.to_string(false), "x^5");
  EXPECT_EQ(m.gy.at(0, 0), ser("x", ring));
  EXPECT_EQ(m.gy.at(0, 1), ser("-x^3", ring));
  EXPECT_EQ(m.gy.at(1, 1), ser("x^5", ring));
  EXPECT_EQ(m.q[0].to_string(), "x^6*T1*T2 - x^8*T2^2");
  EXPECT_EQ(m.eqs[0].to_string(), "T1 + x^6*T1*T2 - x^8*T2^2");
  EXPECT_EQ(m.loc_s.to_string(), "1 + x^6*T2");
}

TEST(Model, CuspOverF5ReducesCoefficients) {
  SmoothModel m = model_of("cusp_f5");
  EXPECT_EQ(m.eqs[0].to_string(), "T1 + x^2*T1^2 + x^6*T1*T2 + 2*x^10*T2^2 + 4*x^16*T2^3");
}

TEST(Model, SquareSystemHasNoParameters) {
  SmoothModel m = model_of("linear");
  EXPECT_EQ(m.param_count(), 0);
  EXPECT_EQ(m.eqs[0].to_string(), "T1");
}

TEST(Model, MinorColumnsArePermutedInternally) {
  SmoothModel m = model_of("plane_line");
  EXPECT_EQ(m.columns.order(), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(m.param_count(), 2);
  EXPECT_EQ(m.eqs[0].to_string(), "T1 + x^5*T1*T2");
  EXPECT_TRUE(verify_model(m).all_passed());
}

TEST(Model, AdjugateIdentityHolds) {
  for (const char* name : {"cusp", "node", "plane_line", "parabola", "twisted_variety", "node_offset"}) {
    SmoothModel m = model_of(name);
    PolyMatrix scaled = m.p * PolyMatrix::identity(m.ring, m.n, static_cast<std::size_t>(m.n));
    EXPECT_EQ(m.g * m.h, scaled) << name;
    EXPECT_EQ(m.h * m.g, scaled) << name;
    EXPECT_EQ(det(m.h), m.minor) << name;
  }
}

TEST(Model, MonomialFamilyVerifies) {
  for (const Problem& p : monomial_family()) {
    SmoothModel m = build_model(p);
    VerificationReport rep = verify_model(m);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    for (const auto& q : m.q) EXPECT_TRUE(q.is_zero() || q.min_t_degree() >= 2u);
  }
}

TEST(Model, PerturbedJetHasNonzeroA) {
  SmoothModel m = model_of("node_offset");
  EXPECT_FALSE(m.a[0].is_zero());
  EXPECT_EQ(m.a[0].ord(), 3);
  EXPECT_TRUE(verify_model(m).all_passed());
}

TEST(Verify, TamperedQIsCaught) {
  SmoothModel m = model_of("cusp");
  m.q[0] += Series::monomial(m.ring, Scalar::one(m.ring.field), 12) * Poly::variable(m.ring, m.n, Var::t(2)).pow(2);
  VerificationReport rep = verify_model(m);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Verify, TamperedGIsCaught) {
  SmoothModel m = model_of("node");
  m.g.at(0, 0) += Poly::from_int(m.ring, m.n, 1);
  EXPECT_FALSE(verify_model(m).all_passed());
}

TEST(Normalize, OrderTooHighIsRejected) {
  SmoothModel m = model_of("cusp");
  try {
    normalize_certificate(m.cert, m.minor, m.jet, 4, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OrderTooHigh);
  }
}
