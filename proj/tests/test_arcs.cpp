#include <gtest/gtest.h>

#include <cmath>

#include "arclift/arcs.hpp"
#include "arclift/error.hpp"
#include "arclift/random.hpp"
#include "support.hpp"

using namespace arclift;
using namespace arclift::testing;

namespace {

constexpr const char* kCuspArc = "x^3 + 3*x^10 + 3*x^17 + x^24, x^2 + 2*x^9 + x^16";

ErrorKind kind_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::IdentityFailed;
}

int newton_bound(int n_work) { return static_cast<int>(std::ceil(std::log2(n_work))) + 1; }

}  // namespace

TEST(Lift, CuspFromFreeCoordinate) {
  SmoothModel m = model_of("cusp");
  LiftResult lift = make_lift(m, sers("x^9", m.ring));
  EXPECT_TRUE(lift.strict);
  EXPECT_EQ(lift.y[0].to_string(), "x^3 + 6*x^18 + 6*x^33 + O(x^37)");
  EXPECT_EQ(lift.y[1].to_string(), "x^2 + 4*x^17 + O(x^40)");
  EXPECT_EQ(lift.t[0].to_string(), "3*x^28 + O(x^32)");
  EXPECT_GE(lift.residual_f, lift.prec);
}

TEST(Lift, NodeBoundCoordinateSolvesTheEquation) {
  SmoothModel m = model_of("node");
  LiftResult lift = make_lift(m, sers("x", m.ring));
  // g = T1 + x^6 T1 x - x^8 x^2 = 0 gives T1 = x^10 / (1 + x^7)
  Series expected = ser("x^10", m.ring) * ser("1 + x^7", m.ring).inv_unit();
  EXPECT_TRUE(lift.t[0].agrees_to(expected, m.lift_prec()));
  EXPECT_FALSE(lift.strict);
}

TEST(Lift, SoundnessOnRandomFreeCoordinates) {
  for (const char* name : {"cusp", "cusp_f5", "node", "plane_line", "twisted_variety", "parabola"}) {
    SmoothModel m = model_of(name);
    SeededDraw draw(100);
    for (int i = 0; i < 100; ++i) {
      LiftResult lift = make_lift(m, draw.series_vector(m.ring, m.param_count()));
      EXPECT_GE(lift.residual_f, lift.prec) << name;
      EXPECT_GE(lift.residual_ideal, lift.prec - m.c) << name;
      EXPECT_LE(lift.iterations, newton_bound(m.ring.n_work)) << name;
    }
  }
}

TEST(Lift, ReconstructionOfStrictLifts) {
  for (const char* name : {"cusp", "node", "plane_line"}) {
    SmoothModel m = model_of(name);
    SeededDraw draw(101);
    int strict = 0;
    for (int i = 0; i < 60; ++i) {
      SeriesVector t_free = draw.series_vector(m.ring, m.param_count());
      for (auto& s : t_free) s = s.shifted_up(2 * m.c);
      LiftResult lift = make_lift(m, t_free);
      if (!lift.strict) continue;
      ++strict;
      SeriesVector t = extract_t(m, lift.y);
      for (std::size_t j = 0; j < t.size(); ++j) {
        EXPECT_TRUE(t[j].agrees_to(lift.t[j], lift.prec - 2 * m.c)) << name;
      }
    }
    EXPECT_GT(strict, 0) << name;
  }
}

TEST(Lift, SquareSystemIsTheJet) {
  SmoothModel m = model_of("linear");
  LiftResult lift = make_lift(m, {});
  EXPECT_TRUE(lift.strict);
  EXPECT_EQ(lift.y[0].to_string(false), "x");
}

TEST(Lift, FreeCoordinatesMustLieInTheMaximalIdeal) {
  SmoothModel m = model_of("cusp");
  EXPECT_EQ(kind_of([&] { make_lift(m, sers("1 + x", m.ring)); }), ErrorKind::OrderViolation);
}

TEST(Hensel, ConvergesQuadratically) {
  std::vector<SmoothModel> models;
  for (const char* name : {"cusp", "cusp_f5", "node", "node_offset", "plane_line", "twisted_variety", "parabola"}) {
    models.push_back(model_of(name));
  }
  for (const Problem& p : monomial_family()) models.push_back(build_model(p));
  for (const auto& m : models) {
    SeededDraw draw(102);
    for (int i = 0; i < 20; ++i) {
      SeriesVector seed(static_cast<std::size_t>(m.r), Series(m.ring));
      HenselResult h = hensel_solve(m, draw.series_vector(m.ring, m.param_count()), seed, m.lift_prec());
      EXPECT_GE(h.residual_order, m.lift_prec());
      EXPECT_LE(h.iterations, 7);
    }
  }
}

TEST(Hensel, TargetBeyondKnownPrecisionIsRefused) {
  SmoothModel m = model_of("cusp");
  SeriesVector seed(1, Series(m.ring));
  EXPECT_EQ(kind_of([&] { hensel_solve(m, sers("x", m.ring), seed, m.lift_prec() + 1); }),
            ErrorKind::PrecisionExhausted);
}

TEST(Extract, ExactCuspArc) {
  SmoothModel m = model_of("cusp");
  SeriesVector arc = sers(kCuspArc, m.ring);
  SeriesVector t = extract_t(m, arc);
  EXPECT_EQ(t[0].to_string(false), "3/4*x^12 + 1/2*x^19");
  EXPECT_EQ(t[1].to_string(false), "1/2*x + 1/4*x^8");

  LiftResult again = make_lift(m, std::span<const Series>(t).subspan(1));
  EXPECT_TRUE(again.strict);
  for (std::size_t i = 0; i < arc.size(); ++i) EXPECT_TRUE(again.y[i].agrees_to(arc[i], again.y[i].prec()));

  LiftResult reference = make_lift(m, sers("0", m.ring));
  EXPECT_EQ(kind_of([&] { extract_params(m, reference, arc); }), ErrorKind::OutOfFamily);
}

TEST(Extract, NonStrictArcIsRejected) {
  SmoothModel m = model_of("node");
  LiftResult lift = make_lift(m, sers("x", m.ring));
  ASSERT_FALSE(lift.strict);
  EXPECT_EQ(kind_of([&] { extract_t(m, lift.y); }), ErrorKind::NotStrict);
}

TEST(Extract, NonArcIsRejected) {
  SmoothModel m = model_of("cusp");
  EXPECT_EQ(kind_of([&] { extract_t(m, sers("x^3 + x^20, x^2", m.ring)); }), ErrorKind::IdentityFailed);
}

TEST(Extract, PermutedColumnsRoundTrip) {
  SmoothModel m = model_of("plane_line");
  LiftResult lift = make_lift(m, sers("x^7, 2*x^8", m.ring));
  ASSERT_TRUE(lift.strict);
  EXPECT_TRUE(lift.y[2].is_zero());
  SeriesVector t = extract_t(m, lift.y);
  EXPECT_EQ(t[1], lift.t[1]);
  EXPECT_EQ(t[2], lift.t[2]);
}

TEST(Offset, ParamOneMatchesFreeCoordinateLift) {
  SmoothModel m = model_of("cusp");
  StrictSearch search = find_strict_reference(m, 8);
  ASSERT_TRUE(search.lift.has_value());
  EXPECT_EQ(search.stage, 1);
  LiftResult by_params = offset_lift(m, *search.lift, sers("1", m.ring));
  LiftResult by_t = make_lift(m, sers("x^9", m.ring));
  EXPECT_EQ(by_params.y[0].to_string(), by_t.y[0].to_string());
  EXPECT_EQ(by_params.y[1].to_string(), by_t.y[1].to_string());
}

TEST(Offset, RoundTripAtContractPrecision) {
  for (const char* name : {"cusp", "node", "node_offset", "plane_line", "twisted_variety"}) {
    SmoothModel m = model_of(name);
    StrictSearch search = find_strict_reference(m, 8);
    ASSERT_TRUE(search.lift.has_value()) << name;
    const int contract = m.ring.n_work - 4 * m.c - 1;
    SeededDraw draw(103);
    for (int i = 0; i < 50; ++i) {
      SeriesVector z = draw.series_vector(m.ring, m.param_count());
      LiftResult lift = offset_lift(m, *search.lift, z);
      EXPECT_TRUE(lift.strict);
      SeriesVector back = extract_params(m, *search.lift, lift.y);
      for (std::size_t j = 0; j < z.size(); ++j) {
        EXPECT_TRUE(back[j].agrees_to(z[j], contract)) << name << " " << back[j].to_string();
      }
    }
  }
}

TEST(Offset, DistinctParametersGiveDistinctArcs) {
  SmoothModel m = model_of("cusp");
  LiftResult reference = *find_strict_reference(m, 8).lift;
  const int contract = m.ring.n_work - 4 * m.c - 1;
  SeededDraw draw(104);
  for (int i = 0; i < 20; ++i) {
    SeriesVector z = draw.series_vector(m.ring, 1);
    int k = static_cast<int>(i % contract);
    SeriesVector z2 = {z[0] + Series::monomial(m.ring, Scalar::from_int(m.ring.field, 1 + i % 4), k)};
    LiftResult a = offset_lift(m, reference, z);
    LiftResult b = offset_lift(m, reference, z2);
    EXPECT_FALSE(a.y[0] == b.y[0] && a.y[1] == b.y[1]);
    EXPECT_FALSE(extract_t(m, a.y)[1] == extract_t(m, b.y)[1]);
  }
}

TEST(Offset, PrecisionBudget) {
  SmoothModel m = model_of("cusp");
  LiftResult reference = *find_strict_reference(m, 8).lift;
  LiftResult lift = offset_lift(m, reference, sers("1", m.ring));
  EXPECT_EQ(lift.prec, 37);
  SeriesVector z = extract_params(m, reference, lift.y);
  EXPECT_EQ(z[0].prec(), m.ring.n_work - 4 * m.c - 1);
  EXPECT_EQ(z[0].to_string(false), "1");
}

TEST(Search, StageOneOnCuspAndNode) {
  for (const char* name : {"cusp", "node"}) {
    SmoothModel m = model_of(name);
    StrictSearch s = find_strict_reference(m, 8);
    ASSERT_TRUE(s.lift.has_value());
    EXPECT_EQ(s.stage, 1);
    SeriesVector y = m.columns.to_external(m.jet);
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_TRUE(s.lift->y[i].agrees_to(y[i], s.lift->prec));
  }
}

TEST(Search, StageTwoFindsTheUnperturbedNode) {
  SmoothModel m = model_of("node_offset");
  StrictSearch s = find_strict_reference(m, 8);
  ASSERT_TRUE(s.lift.has_value());
  EXPECT_EQ(s.stage, 2);
  EXPECT_TRUE(s.lift->strict);
  EXPECT_EQ(s.lift->y[0].truncated(11).to_string(false), "x^2");
  EXPECT_EQ(s.lift->y[1].truncated(11).to_string(false), "x^4");
}

TEST(Search, ReportsNotFoundWithoutClaimingEmptiness) {
  SmoothModel m = model_of("cusp_no_strict");
  EXPECT_EQ(m.a[0].ord(), 2);
  StrictSearch s = find_strict_reference(m, 8);
  EXPECT_FALSE(s.lift.has_value());
  EXPECT_EQ(s.stage, 0);
  EXPECT_FALSE(s.note.empty());
}

TEST(Search, PerturbedCuspIsStrictAtStageOne) {
  SmoothModel m = model_of("cusp_perturbed");
  EXPECT_FALSE(m.a[0].is_zero());
  StrictSearch s = find_strict_reference(m, 8);
  ASSERT_TRUE(s.lift.has_value());
  EXPECT_TRUE(s.lift->strict);
}

TEST(Determinism, LiftsAreReproducible) {
  SmoothModel m = model_of("node");
  SeededDraw first(7), second(7);
  for (int i = 0; i < 10; ++i) {
    LiftResult a = make_lift(m, first.series_vector(m.ring, 1));
    LiftResult b = make_lift(m, second.series_vector(m.ring, 1));
    EXPECT_EQ(a.y[0].to_string(), b.y[0].to_string());
    EXPECT_EQ(a.y[1].to_string(), b.y[1].to_string());
  }
}
