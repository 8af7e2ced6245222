#include <doctest.h>

#include "mcgpres/catalog.hpp"
#include "mcgpres/homology.hpp"

using namespace mcgpres;

TEST_CASE("curve classes from the ledger") {
  HomologySpace H(4, 3);
  CHECK(H.str(curve_class("alpha2", 4, 3).cls) == "X2+X3");
  CHECK(H.str(curve_class("delta2", 4, 3).cls) == "H2");
  auto mu = curve_class("mu1", 4, 3);
  CHECK(mu.one_sided);
  CHECK(H.str(mu.cls) == "X1");
  CHECK(H.str(curve_class("-alpha1;2", 4, 3).cls) == "X1+X2+H2");
  CHECK_THROWS_AS(curve_class("alpha4", 4, 3), UnknownCurve);
  CHECK_THROWS_AS(curve_class("delta3", 4, 3), UnknownCurve);
  CHECK_THROWS_AS(curve_class("omega", 4, 3), UnknownCurve);
}

TEST_CASE("twist matrices") {
  HomologySpace H(3, 2);
  auto T = twist_matrix(curve_class("delta1", 3, 2), H);
  CHECK(T.is_identity());
  auto A = twist_matrix(curve_class("alpha1", 3, 2), H);
  CHECK(A.apply(0b011) == 0b011);
  CHECK(A.apply(0b001) == 0b010);
  for (auto c : {"alpha1", "alpha2", "alpha1;1", "rho2;1"}) {
    auto M = twist_matrix(curve_class(c, 3, 2), H);
    CHECK((M * M).is_identity());
    CHECK(preserves_form(M, H));
  }
  CHECK_THROWS_AS(twist_matrix(curve_class("mu1", 3, 2), H), OneSidedTwist);
}

TEST_CASE("crosscap slide matrices") {
  HomologySpace H(3, 2);
  auto Y = assign(gen_y(), H);
  CHECK((Y * Y).is_identity());
  CHECK(preserves_form(Y, H));
  auto d = curve_class("delta1", 3, 2);
  CHECK(y_matrix(curve_class("mu1", 3, 2), curve_class("alpha1", 3, 2), d, d, H).is_identity());
  CHECK_THROWS(assign(gen_cross_y("mu2", "alpha2", '+'), H));
}

TEST_CASE("relator verification") {
  CHECK(verify_relator(parse_word("a1*a2*a1*a2^-1*a1^-1*a2^-1"), 3, 1).ok);
  CHECK(verify_relator(parse_word("d1*a1_1*d1^-1*a1_1^-1"), 3, 2).ok);
  auto bad = verify_relator(parse_word("a1*a2_1*a1^-1*a2_1^-1"), 3, 2);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.witness.empty());
  CHECK_THROWS_AS(verify_relator(parse_word("z1"), 3, 2), Unassigned);
}

TEST_CASE("chain relation as matrices") {
  HomologySpace H(3, 1);
  Representation R(H);
  Word lhs = (Word(gen_twist("alpha1", '+')) * Word(gen_twist("alpha2", '+'))).pow(6);
  CHECK(R.image(lhs) == R.image(Word(gen_twist("kappa1", '+'))));
}

TEST_CASE("full presentations verify on the grid") {
  for (int g = 1; g <= 6; ++g)
    for (int n = 1; n <= 4; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      auto rep = verify_presentation(g, n, 2);
      CHECK(rep.ok());
      CHECK(rep.form_failed == 0);
    }
}
