// End-to-end pipeline: carving a weight's representation pair out of the
// exterior module and certifying the claim, plus the symplectic check suite.
//
// Dimension expectations below restate the Weyl dimension formula by hand
// (general-linear hook content at these tiny ranks) rather than calling the
// oracle the pipeline already consults.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "weylcarve/carve.hpp"
#include "weylcarve/errors.hpp"

using namespace weylcarve;
using namespace weylcarve::carve;
using exactnum::make_rat;
using exactnum::Rat;
using repspace::galois_apply;
using weights::TorusChar;
using weights::Weight;

namespace {

CarveReport run(const std::vector<long>& entries, long c, long p, long d) {
  return carve_unitary(Weight::unitary(entries, c), std::optional<Int>(Int(p)), d);
}

}  // namespace

TEST_CASE("carve: the standard weight recovers the full base module") {
  CarveReport rep = run({1}, 1, 5, 1);
  CHECK(rep.s == 1);
  CHECK(rep.m == 2);
  CHECK(rep.separator.a == QuadElem(Rat(4), Rat(1), 1));
  CHECK(rep.separator.bez.c == 1);
  CHECK(rep.dim_image == 2);
  CHECK(rep.expected_dim == 2);
  CHECK(rep.t == 1);
  CHECK(t_of(rep) == 1);
  CHECK(rep.galois_fixed_dim == 2);
  CHECK(rep.p_gt_2g);
  CHECK(rep.s_lt_p);
  CHECK(rep.p_small);
  CHECK(rep.p_small_dual);
  CHECK(rep.min_p_valuation == exactnum::Valuation(0));
  CHECK(rep.pass);
  CHECK(rep.dual == Weight::unitary({-1}, 1));
  REQUIRE(rep.highest_weights.size() == 2);
  CHECK(rep.highest_weights[0] == TorusChar{{-1}, 1});
  CHECK(rep.highest_weights[1] == TorusChar{{1}, 1});
  // The projector is an idempotent fixing its image pointwise.
  for (const auto& b : rep.image.basis)
    CHECK(repspace::apply(rep.projector, b) == b);
  // Fixed rational points are genuinely fixed by the involution.
  for (const auto& b : repspace::galois_fixed_basis(rep.image))
    CHECK(galois_apply(rep.image.space, b) == b);
}

TEST_CASE("carve: frozen image dimensions across weights and fields") {
  // g = 1: every general-linear factor is a character, so always 1 + 1.
  CHECK(run({2}, 2, 7, 1).dim_image == 2);
  CHECK(run({3}, 3, 5, 1).dim_image == 2);
  CHECK(run({2}, 2, 7, 3).dim_image == 2);
  // g = 2: hooks give dim(1,0) = 2, dim(1,1) = 1, dim(2,0) = 3, dim(2,1) = 2.
  CHECK(run({1, 0}, 1, 7, 1).dim_image == 4);
  CHECK(run({1, 0}, 1, 7, 3).dim_image == 4);
  CHECK(run({1, 1}, 2, 7, 1).dim_image == 2);
  CHECK(run({2, 0}, 2, 7, 1).dim_image == 6);
  CHECK(run({2, 1}, 3, 7, 1).dim_image == 4);
  CHECK(run({2, 1}, 3, 11, 3).dim_image == 4);
}

TEST_CASE("carve: integral certificates hold across a mixed sweep") {
  for (long d : {1L, 3L}) {
    for (long p : {7L, 11L}) {
      for (const auto& [entries, c] : std::vector<std::pair<std::vector<long>, long>>{
               {{1}, 1}, {{2}, 2}, {{1, 0}, 1}, {{1, 1}, 2}, {{2, 0}, 2}}) {
        CAPTURE(d);
        CAPTURE(p);
        CarveReport rep = run(entries, c, p, d);
        CHECK(rep.pass);
        CHECK(exactnum::val_nonneg(rep.min_p_valuation));
        CHECK(rep.t == rep.s);
        CHECK(Int(rep.dim_image) == rep.expected_dim);
        CHECK(rep.galois_fixed_dim == rep.dim_image);
      }
    }
  }
}

TEST_CASE("carve: rational modes") {
  // No prime: separators run off an internal driver, no valuation claim.
  CarveReport rep = carve_unitary(Weight::unitary({2, 0}, 2), std::nullopt, 1);
  CHECK(rep.dim_image == 6);
  CHECK(!rep.p.has_value());
  CHECK(rep.min_p_valuation == std::nullopt);
  CHECK(!rep.p_small);
  CHECK(rep.pass);

  // Split rational coefficient model: the involution is linear, so the
  // fixed dimension drops to half and no form equality is claimed.
  CarveReport flat = run({1}, 1, 7, 0);
  CHECK(flat.dim_image == 2);
  CHECK(flat.galois_fixed_dim == 1);
  CHECK(flat.pass);
  CHECK(flat.separator.a == QuadElem(1));
  CHECK(flat.separator.b == QuadElem(2));
}

TEST_CASE("carve: rejections name the violated hypothesis") {
  try {
    run({1, -1}, 0, 7, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_effective);
  }
  try {
    run({0}, 0, 7, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_effective);
  }
  try {
    run({1, 0}, 1, 3, 1);  // p = 3 <= 2g = 4
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::p_too_small);
  }
  try {
    run({1}, 1, 2, 1);  // p = 2 <= 2g = 2
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::p_too_small);
  }
  try {
    run({1}, 1, 7, 7);  // 7 ramifies in disc 7
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::ramified_prime);
  }
  try {
    carve_unitary(Weight::unitary({2, 1}, 3), std::optional<Int>(Int(7)), 1, uint64_t(1) << 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::size_limit);
  }
  CHECK_THROWS_AS(carve_unitary(Weight::siegel({1, 0}, 1), std::optional<Int>(Int(7)), 1), Error);
}

TEST_CASE("siegel suite: all identities hold and the scalars are recorded") {
  SiegelReport rep = carve_siegel_checks(1, 2, Int(5));
  CHECK(rep.dim == 16);
  CHECK(rep.pass);
  REQUIRE(rep.checks.size() == 6);
  for (const auto& c : rep.checks) {
    CAPTURE(c.name);
    CHECK(c.ok);
  }
  CHECK(exactnum::val_nonneg(rep.theta_min_valuation));
  REQUIRE(rep.commutator_scalars.size() == 5);
  CHECK(rep.commutator_scalars[0] == QuadElem(2));
  CHECK(rep.commutator_scalars[1] == QuadElem(1));
  CHECK(rep.commutator_scalars[2] == QuadElem(0));
  CHECK(rep.commutator_scalars[3] == QuadElem(-1));
  CHECK(rep.commutator_scalars[4] == QuadElem(-2));

  CHECK(carve_siegel_checks(2, 2, Int(7)).pass);
  CHECK(carve_siegel_checks(1, 3, Int(5)).pass);
}

TEST_CASE("siegel suite: rejections") {
  try {
    carve_siegel_checks(1, 2, Int(2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::p_too_small);
  }
  try {
    carve_siegel_checks(2, 2, Int(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::p_too_small);
  }
  CHECK_THROWS_AS(carve_siegel_checks(1, 2, Int(4)), Error);
  CHECK_THROWS_AS(carve_siegel_checks(1, 1, Int(5)), Error);
  try {
    carve_siegel_checks(3, 4, Int(7));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::size_limit);
  }
}
