#include <doctest.h>

#include <set>

#include "syzlab/errors.hpp"
#include "syzlab/exterior.hpp"
#include "syzlab/koszul.hpp"
#include "syzlab/matrix.hpp"
#include "syzlab/models.hpp"
#include "syzlab/rng.hpp"

using namespace syzlab;

namespace {

const PrimeField F(kDefaultPrime);

std::size_t k11(std::size_t g) { return (g - 2) * (g - 3) / 2; }

NodalCurve curve_with_equation(const FormSpace& space, std::vector<AffinePoint> nodes, const std::vector<Vector>& extra_rows,
                               std::uint64_t seed) {
  std::vector<Vector> rows = extra_rows;
  for (const auto& pt : nodes) {
    rows.push_back(space.derivative_functional(pt, 0, 0, F));
    rows.push_back(space.derivative_functional(pt, 1, 0, F));
    rows.push_back(space.derivative_functional(pt, 0, 1, F));
  }
  const auto sols = solve_homogeneous(ExactMatrix::from_rows(rows, space.size(), F));
  REQUIRE(!sols.empty());
  Rng rng(seed);
  NodalCurve c;
  c.space = space;
  c.field = F;
  c.seed = seed;
  c.nodes = std::move(nodes);
  c.equation.assign(space.size(), 0);
  for (const auto& s : sols) F.axpy(c.equation, rng.residue(F), s);
  return c;
}

}  // namespace

TEST_CASE("plane model examples") {
  const NodalCurve c5 = fit_nodal_plane(6, 5, F, 1);
  CHECK(c5.genus() == 5);
  CHECK(adjoint_basis(c5).size() == 5);
  CHECK(c5.adjoint_space().size() == 10);

  const NodalCurve c7 = fit_nodal_plane(7, 8, F, 1);
  CHECK(c7.genus() == 7);
  CHECK(adjoint_basis(c7).size() == 7);
  CHECK(nodal_equations(c7.space, c7.nodes, F).size() == 12);

  const NodalCurve c9 = fit_nodal_plane(8, 12, F, 1);
  CHECK(c9.genus() == 9);
  CHECK(adjoint_basis(c9).size() == 9);
}

TEST_CASE("plane quotient counts") {
  const NodalCurve c7 = fit_nodal_plane(7, 8, F, 2);
  CHECK(nodal_equations(c7.adjoint_square_space(), c7.nodes, F).size() == 21);
  CHECK(c7.equation_multiplier_space().size() == 3);
  CHECK(mul_table_quotient(c7).h0L2() == 18);

  const NodalCurve c5 = fit_nodal_plane(6, 5, F, 2);
  CHECK(nodal_equations(c5.adjoint_square_space(), c5.nodes, F).size() == 13);
  CHECK(c5.equation_multiplier_space().size() == 1);
  CHECK(mul_table_quotient(c5).h0L2() == 12);
}

TEST_CASE("gonal model parameters") {
  for (int k = 3; k <= 5; ++k)
    for (GonalShape shape : {GonalShape::KK1, GonalShape::K4}) {
      const BidegreeParams p = gonal_params(k, shape);
      CHECK((p.a - 1) * (p.b - 1) - p.nodes == 2 * k - 1);
    }
  CHECK_THROWS(gonal_params(2, GonalShape::KK1));
  CHECK(maxcliff_params(3).degree == 6);
  CHECK(maxcliff_params(3).nodes == 5);
  CHECK(maxcliff_params(4).nodes == 8);
  CHECK(maxcliff_params(5).nodes == 12);
}

TEST_CASE("gonal models have the right genus and adjoint dimension") {
  for (int k = 3; k <= 5; ++k) {
    const NodalCurve c = fit_nodal_bideg(k, F, 7);
    CHECK(c.genus() == 2 * k - 1);
    CHECK(adjoint_basis(c).size() == static_cast<std::size_t>(2 * k - 1));
    CHECK(model_selfcheck(c).all_passed());
  }
}

TEST_CASE("bidegree (4,4) model counts") {
  const NodalCurve c = fit_nodal_bideg(4, F, 7, GonalShape::K4);
  CHECK(c.adjoint_space().size() == 9);
  CHECK(adjoint_basis(c).size() == 7);
  CHECK(nodal_equations(c.adjoint_square_space(), c.nodes, F).size() == 19);
  CHECK(c.equation_multiplier_space().size() == 1);
  CHECK(mul_table_quotient(c).h0L2() == 18);
}

TEST_CASE("bidegree (k,4) curves carry a second degree-4 pencil") {
  // k = 4: two degree-4 pencils, so more syzygies than a general tetragonal curve
  CHECK(extra_syzygies(mul_table_quotient(fit_nodal_bideg(4, F, 7, GonalShape::K4)), 4) > 3);
  // k = 3 is still a general trigonal curve
  CHECK(extra_syzygies(mul_table_quotient(fit_nodal_bideg(3, F, 7, GonalShape::K4)), 3) == 2);
}

TEST_CASE("models are deterministic in the seed") {
  const NodalCurve a = fit_nodal_bideg(4, F, 99), b = fit_nodal_bideg(4, F, 99);
  CHECK(a.equation == b.equation);
  CHECK(a.nodes == b.nodes);
  CHECK(mul_table_quotient(a) == mul_table_quotient(b));
  CHECK(fit_nodal_bideg(4, F, 100).equation != a.equation);
}

TEST_CASE("fit preconditions") {
  CHECK_THROWS(fit_nodal_plane(7, 12, F, 1));          // 37 constraints on 36 coefficients
  CHECK_THROWS(fit_nodal_plane(6, 5, PrimeField(101), 1));
  CHECK_THROWS(fit_nodal_plane(3, 0, F, 1));
  CHECK_THROWS(fit_nodal_bidegree(1, 4, 0, F, 1));
}

TEST_CASE("selfcheck detects a cusp") {
  Rng rng(5);
  std::vector<AffinePoint> nodes;
  for (int i = 0; i < 5; ++i) nodes.push_back({rng.residue(F), rng.residue(F)});
  const FormSpace sextics = FormSpace::plane(6);
  const std::vector<Vector> cusp_rows = {sextics.derivative_functional(nodes[0], 2, 0, F),
                                         sextics.derivative_functional(nodes[0], 1, 1, F)};
  const NodalCurve c = curve_with_equation(sextics, nodes, cusp_rows, 3);
  const SelfCheckReport r = model_selfcheck(c);
  CHECK(r.find("nodes_singular").passed);
  CHECK_FALSE(r.find("nodes_nondegenerate").passed);
  CHECK_FALSE(r.all_passed());
  CHECK_THROWS(r.find("no_such_check"));

  // the same construction without the cusp rows passes
  CHECK(model_selfcheck(curve_with_equation(sextics, nodes, {}, 3)).all_passed());
}

TEST_CASE("selfcheck detects nodes in special position") {
  // degree 7 with 6 of its 8 nodes on the line v = 2u + 1: the adjoint
  // quartics through the nodes gain a dimension
  Rng rng(12);
  std::vector<AffinePoint> nodes;
  for (int i = 0; i < 6; ++i) {
    const Residue u = rng.residue(F);
    nodes.push_back({u, F.add(F.mul(2, u), 1)});
  }
  nodes.push_back({rng.residue(F), rng.residue(F)});
  nodes.push_back({rng.residue(F), rng.residue(F)});
  const NodalCurve c = curve_with_equation(FormSpace::plane(7), nodes, {}, 4);
  const SelfCheckReport r = model_selfcheck(c);
  CHECK(r.find("nodes_singular").passed);
  CHECK_FALSE(r.find("adjoint_dimension").passed);
  CHECK_THROWS_AS(adjoint_basis(c), DegenerateInstance);
}

TEST_CASE("selfcheck rejects a point that is not singular") {
  NodalCurve c = fit_nodal_plane(6, 5, F, 8);
  c.nodes[2].u = F.add(c.nodes[2].u, 1);
  CHECK_FALSE(model_selfcheck(c).find("nodes_singular").passed);
}

TEST_CASE("sampled points lie on the curve") {
  const NodalCurve c = fit_nodal_plane(7, 8, F, 3);
  const auto pts = sample_points(c, 70, 1);
  CHECK(pts.size() == 70);
  std::set<std::pair<Residue, Residue>> seen;
  for (const auto& pt : pts) {
    CHECK(c.space.evaluate(c.equation, pt, F) == 0);
    CHECK(std::find(c.nodes.begin(), c.nodes.end(), pt) == c.nodes.end());
    CHECK(seen.insert({pt.u, pt.v}).second);
  }
  CHECK_THROWS_AS(sample_points(c, F.modulus(), 1), InsufficientPoints);
}

TEST_CASE("evaluation route needs enough points") {
  const NodalCurve c = fit_nodal_plane(6, 5, F, 3);
  CHECK_THROWS_AS(mul_table_eval(c, 20, 1), InsufficientPoints);
  CHECK(mul_table_eval(c, 33, 1).h0L2() == 12);
}

TEST_CASE("both routes give the same strand") {
  std::vector<NodalCurve> curves = {fit_nodal_bideg(3, F, 1), fit_nodal_bideg(4, F, 1), fit_nodal_plane(6, 5, F, 1),
                                    fit_nodal_plane(7, 8, F, 1), fit_nodal_bideg(4, F, 2, GonalShape::K4)};
  for (const auto& c : curves) {
    const MulTable q = mul_table_quotient(c);
    const MulTable e = mul_table_eval(c);
    const auto g = static_cast<std::size_t>(c.genus());
    CHECK(table_selfcheck(q, g, 3 * g - 3).all_passed());
    CHECK(table_selfcheck(e, g, 3 * g - 3).all_passed());
    const auto sq = linear_strand(q), se = linear_strand(e);
    CHECK(sq.dims() == se.dims());
    CHECK(sq.at_p(1).dim == k11(g));
    CHECK(sq.all_compositions_zero());
    CHECK(se.all_compositions_zero());
    CHECK(sq.vanishing_propagates());
  }
}

TEST_CASE("gonal strands satisfy the nullity bound and dominate the scroll") {
  for (int k = 3; k <= 4; ++k) {
    const NodalCurve c = fit_nodal_bideg(k, F, 7);
    const StrandResult s = linear_strand(mul_table_quotient(c));
    const StrandResult scroll = linear_strand(scroll_mul_table(k, F));
    const auto kk = static_cast<std::size_t>(k);
    CHECK(s.at_p(kk - 1).nullity2 >= binom64(2 * k - 1, k - 1) + kk - 1);
    CHECK(s.at_p(kk - 1).dim == kk - 1);
    REQUIRE(s.entries.size() == scroll.entries.size());
    for (std::size_t i = 0; i < s.entries.size(); ++i) CHECK(s.entries[i].dim >= scroll.entries[i].dim);
  }
}

TEST_CASE("scroll tables") {
  const std::size_t expected[][2] = {{5, 12}, {7, 22}, {9, 35}};
  for (int k = 3; k <= 5; ++k) {
    const MulTable t = scroll_mul_table(k, F);
    CHECK(t.h0L() == expected[k - 3][0]);
    CHECK(t.h0L2() == expected[k - 3][1]);
    CHECK(scroll_h0L2(k) == expected[k - 3][1]);
    CHECK(t.is_symmetric());
    CHECK(t.is_surjective());
  }
  CHECK_THROWS(scroll_mul_table(2, F));
}

TEST_CASE("complete intersection fixtures") {
  const MulTable t5 = ci_mul_table(5, F, 1);
  CHECK(t5.h0L() == 5);
  CHECK(t5.h0L2() == 12);
  const MulTable t4 = ci_mul_table(4, F, 1);
  CHECK(t4.h0L() == 4);
  CHECK(t4.h0L2() == 9);
  CHECK(table_selfcheck(t5, 5, 12).all_passed());
  CHECK_THROWS_AS(make_ci_fixture(6, F, 1), UnsupportedGenus);
  CHECK(make_ci_fixture(5, F, 1).quadrics.size() == 3);
  CHECK(make_ci_fixture(4, F, 1).quadrics.size() == 1);
  CHECK_FALSE(table_selfcheck(t5, 5, 11).all_passed());
}

TEST_CASE("curve JSON round trip") {
  const NodalCurve c = fit_nodal_bideg(4, F, 5);
  const auto doc = to_json(c);
  CHECK(doc["schema"] == kModelSchemaVersion);
  CHECK(doc["kind"] == "bidegree");
  const NodalCurve back = curve_from_json(doc);
  CHECK(back.equation == c.equation);
  CHECK(back.nodes == c.nodes);
  CHECK(back.space == c.space);
  CHECK(mul_table_quotient(back) == mul_table_quotient(c));

  const NodalCurve p = fit_nodal_plane(6, 5, F, 5);
  CHECK(curve_from_json(to_json(p)).equation == p.equation);

  auto broken = doc;
  broken["equation"].erase(0);
  CHECK_THROWS_AS(curve_from_json(broken), Error);
  auto wrong_schema = doc;
  wrong_schema["schema"] = 99;
  CHECK_THROWS_AS(curve_from_json(wrong_schema), Error);
  CHECK_THROWS_AS(curve_from_json(nlohmann::ordered_json::object()), Error);
  CHECK(to_json(make_ci_fixture(5, F, 2))["quadrics"].size() == 3);
}
