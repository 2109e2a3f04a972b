#include "syzlab/models.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "syzlab/errors.hpp"
#include "syzlab/matrix.hpp"
#include "syzlab/rng.hpp"

namespace syzlab {

// ---------------------------------------------------------------------------
// NodalCurve geometry

int NodalCurve::arithmetic_genus() const {
  if (is_plane()) {
    const int d = space.degree_a();
    return (d - 1) * (d - 2) / 2;
  }
  return (space.degree_a() - 1) * (space.degree_b() - 1);
}

FormSpace NodalCurve::adjoint_space() const {
  return is_plane() ? FormSpace::plane(space.degree_a() - 3)
                    : FormSpace::bidegree(space.degree_a() - 2, space.degree_b() - 2);
}

FormSpace NodalCurve::adjoint_square_space() const {
  const FormSpace adj = adjoint_space();
  return adj.product_space(adj);
}

FormSpace NodalCurve::equation_multiplier_space() const {
  return is_plane() ? FormSpace::plane(space.degree_a() - 6)
                    : FormSpace::bidegree(space.degree_a() - 4, space.degree_b() - 4);
}

std::string NodalCurve::describe() const {
  std::ostringstream s;
  if (is_plane())
    s << "plane curve of degree " << space.degree_a();
  else
    s << "curve of bidegree (" << space.degree_a() << "," << space.degree_b() << ") on P1xP1";
  s << " with " << nodes.size() << " nodes, genus " << genus() << ", p = " << field.modulus();
  return s.str();
}

// ---------------------------------------------------------------------------
// Construction

namespace {

void require_prime_size(const PrimeField& field) {
  if (field.modulus() < 1000) throw Error("curve models need a prime of at least 1000");
}

Vector random_combination(const std::vector<Vector>& basis, const PrimeField& F, Rng& rng) {
  Vector out(basis.front().size(), 0);
  for (const auto& b : basis) F.axpy(out, rng.residue(F), b);
  return out;
}

std::vector<AffinePoint> random_nodes(int count, const PrimeField& F, Rng& rng) {
  std::vector<AffinePoint> nodes;
  while (nodes.size() < static_cast<std::size_t>(count)) {
    const AffinePoint pt{rng.residue(F), rng.residue(F)};
    if (std::find(nodes.begin(), nodes.end(), pt) == nodes.end()) nodes.push_back(pt);
  }
  return nodes;
}

NodalCurve fit_with_retries(const FormSpace& space, int node_count, PrimeField field,
                            std::uint64_t seed) {
  require_prime_size(field);
  if (node_count < 0 || static_cast<std::size_t>(3 * node_count) + 1 > space.size())
    throw Error("too many nodes for the space of curve equations");
  std::string last_failure = "no attempt made";
  for (unsigned attempt = 0; attempt < kMaxFitAttempts; ++attempt) {
    Rng rng = Rng::derive(seed, attempt);
    NodalCurve c;
    c.space = space;
    c.field = field;
    c.seed = seed;
    c.attempt = attempt;
    c.nodes = random_nodes(node_count, field, rng);
    const auto solutions = nodal_equations(space, c.nodes, field);
    if (solutions.empty()) {
      last_failure = "no equation through the nodes";
      continue;
    }
    c.equation = random_combination(solutions, field, rng);
    const SelfCheckReport report = model_selfcheck(c);
    if (report.all_passed()) return c;
    for (const auto& chk : report.checks)
      if (!chk.passed) {
        last_failure = chk.name + ": " + chk.detail;
        break;
      }
  }
  throw DegenerateInstance("no valid model after " + std::to_string(kMaxFitAttempts) +
                           " attempts (last failure: " + last_failure + ")");
}

}  // namespace

std::vector<Vector> nodal_equations(const FormSpace& space, const std::vector<AffinePoint>& nodes,
                                    const PrimeField& field) {
  std::vector<Vector> rows;
  for (const auto& pt : nodes) {
    rows.push_back(space.derivative_functional(pt, 0, 0, field));
    rows.push_back(space.derivative_functional(pt, 1, 0, field));
    rows.push_back(space.derivative_functional(pt, 0, 1, field));
  }
  if (rows.empty()) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < space.size(); ++i) {
      Vector e(space.size(), 0);
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return all;
  }
  return solve_homogeneous(ExactMatrix::from_rows(rows, space.size(), field));
}

NodalCurve fit_nodal_plane(int degree, int nodes, PrimeField field, std::uint64_t seed) {
  if (degree < 4) throw Error("plane models need degree at least 4");
  return fit_with_retries(FormSpace::plane(degree), nodes, field, seed);
}

NodalCurve fit_nodal_bidegree(int a, int b, int nodes, PrimeField field, std::uint64_t seed) {
  if (a < 2 || b < 2) throw Error("bidegree models need a, b >= 2");
  return fit_with_retries(FormSpace::bidegree(a, b), nodes, field, seed);
}

BidegreeParams gonal_params(int k, GonalShape shape) {
  if (k < 3) throw Error("gonal models need k >= 3");
  if (shape == GonalShape::K4) return {k, 4, k - 2};
  return {k, k + 1, k * k - 3 * k + 1};
}

NodalCurve fit_nodal_bideg(int k, PrimeField field, std::uint64_t seed, GonalShape shape) {
  const BidegreeParams p = gonal_params(k, shape);
  return fit_nodal_bidegree(p.a, p.b, p.nodes, field, seed);
}

PlaneParams maxcliff_params(int k) {
  if (k < 3) throw Error("max-Clifford models need k >= 3");
  return {k + 3, (k * k - k + 4) / 2};
}

// ---------------------------------------------------------------------------
// Section spaces

std::vector<Vector> adjoint_basis(const NodalCurve& curve) {
  const FormSpace adj = curve.adjoint_space();
  std::vector<Vector> basis;
  if (curve.nodes.empty()) {
    for (std::size_t i = 0; i < adj.size(); ++i) {
      Vector e(adj.size(), 0);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
  } else {
    std::vector<Vector> rows;
    for (const auto& pt : curve.nodes) rows.push_back(adj.derivative_functional(pt, 0, 0, curve.field));
    basis = solve_homogeneous(ExactMatrix::from_rows(rows, adj.size(), curve.field));
  }
  if (static_cast<int>(basis.size()) != curve.genus())
    throw DegenerateInstance("adjoint system has dimension " + std::to_string(basis.size()) +
                             ", expected genus " + std::to_string(curve.genus()));
  return basis;
}

namespace {

MulTable quotient_table(const NodalCurve& curve, const std::vector<Vector>& adjoints) {
  const PrimeField& F = curve.field;
  const FormSpace adj = curve.adjoint_space();
  const FormSpace sq = curve.adjoint_square_space();
  const FormSpace mult = curve.equation_multiplier_space();
  const std::size_t g = adjoints.size();

  const std::vector<Vector> ambient = nodal_equations(sq, curve.nodes, F);
  std::vector<Vector> multiples;
  for (std::size_t i = 0; i < mult.size(); ++i) {
    Vector e(mult.size(), 0);
    e[i] = 1;
    multiples.push_back(curve.space.multiply(curve.equation, mult, e, F));
  }
  const QuotientSpace w2(ambient, multiples, sq.size(), F);
  if (w2.dimension() != 3 * g - 3)
    throw DegenerateInstance("quotient W2 has dimension " + std::to_string(w2.dimension()) +
                             ", expected 3g - 3 = " + std::to_string(3 * g - 3));
  MulTable table(F, g, w2.dimension());
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      const Vector coords = w2.coordinates(adj.multiply(adjoints[i], adj, adjoints[j], F));
      table.set_product(i, j, coords);
      table.set_product(j, i, coords);
    }
  return table;
}

}  // namespace

MulTable mul_table_quotient(const NodalCurve& curve) {
  return quotient_table(curve, adjoint_basis(curve));
}

std::vector<AffinePoint> sample_points(const NodalCurve& curve, std::size_t n, std::uint64_t seed) {
  const PrimeField& F = curve.field;
  if (2 * n > F.modulus()) throw InsufficientPoints("too many points requested for this prime");
  Rng rng = Rng::derive(seed, 0x9017);
  std::vector<AffinePoint> out;
  std::set<std::pair<Residue, Residue>> seen;
  const std::size_t max_lines = 20 * n + 200;
  std::set<Residue> used_u;
  for (std::size_t tries = 0; out.size() < n && tries < max_lines; ++tries) {
    const Residue u = rng.residue(F);
    if (!used_u.insert(u).second) continue;
    const GFPoly restricted = curve.space.restrict_u(curve.equation, u, F);
    if (restricted.degree() <= 0) continue;
    for (Residue v : poly_roots_gfp(restricted, rng.next())) {
      const AffinePoint pt{u, v};
      if (std::find(curve.nodes.begin(), curve.nodes.end(), pt) != curve.nodes.end()) continue;
      const bool smooth = curve.space.derivative(curve.equation, pt, 1, 0, F) != 0 ||
                          curve.space.derivative(curve.equation, pt, 0, 1, F) != 0;
      if (!smooth || !seen.insert({u, v}).second) continue;
      out.push_back(pt);
      if (out.size() == n) break;
    }
  }
  if (out.size() < n)
    throw InsufficientPoints("found " + std::to_string(out.size()) + " of " + std::to_string(n) +
                             " smooth points");
  return out;
}

MulTable mul_table_eval(const NodalCurve& curve, std::size_t n, std::uint64_t seed) {
  const PrimeField& F = curve.field;
  const std::vector<Vector> adjoints = adjoint_basis(curve);
  const std::size_t g = adjoints.size();
  if (n < 8 * g - 7) throw InsufficientPoints("evaluation route needs at least 8g - 7 points");
  const auto points = sample_points(curve, n, seed);
  const FormSpace adj = curve.adjoint_space();

  std::vector<Vector> values(g, Vector(n));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t x = 0; x < n; ++x) values[i][x] = adj.evaluate(adjoints[i], points[x], F);

  std::vector<Vector> products;
  auto pointwise = [&](std::size_t i, std::size_t j) {
    Vector w(n);
    for (std::size_t x = 0; x < n; ++x) w[x] = F.mul(values[i][x], values[j][x]);
    return w;
  };
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) products.push_back(pointwise(i, j));

  const QuotientSpace w2(products, {}, n, F);
  if (w2.dimension() != 3 * g - 3)
    throw DegenerateInstance("product row space has dimension " + std::to_string(w2.dimension()) +
                             ", expected 3g - 3 = " + std::to_string(3 * g - 3));
  MulTable table(F, g, w2.dimension());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j, ++idx) {
      const Vector& coords = w2.projection_table()[idx];
      table.set_product(i, j, coords);
      table.set_product(j, i, coords);
    }
  return table;
}

MulTable mul_table_eval(const NodalCurve& curve) {
  return mul_table_eval(curve, 10 * static_cast<std::size_t>(curve.genus()), curve.seed);
}

// ---------------------------------------------------------------------------
// Scroll

namespace {

// A section of O(m) on the scroll: a fibre coordinate (y_0..y_{k-3} of weight
// 1, z = index k-2 of weight 2) times a monomial u^eu v^ev.
struct ScrollMonomial {
  std::vector<int> fibre;  // sorted fibre coordinate indices
  int eu;
  int ev;
  auto operator<=>(const ScrollMonomial&) const = default;
};

}  // namespace

std::size_t scroll_h0L2(int k) {
  const std::size_t r = static_cast<std::size_t>(k - 2);
  return 3 * r * (r + 1) / 2 + 4 * r + 5;
}

MulTable scroll_mul_table(int k, PrimeField field) {
  if (k < 3) throw Error("scroll model needs k >= 3");
  const int z = k - 2;
  auto weight = [z](int var) { return var == z ? 2 : 1; };

  std::vector<ScrollMonomial> v1;
  for (int i = 0; i < z; ++i) {
    v1.push_back({{i}, 1, 0});
    v1.push_back({{i}, 0, 1});
  }
  v1.push_back({{z}, 2, 0});
  v1.push_back({{z}, 1, 1});
  v1.push_back({{z}, 0, 2});

  std::map<ScrollMonomial, std::size_t> w2_index;
  for (int a = 0; a <= z; ++a)
    for (int b = a; b <= z; ++b) {
      const int deg = weight(a) + weight(b);
      for (int eu = deg; eu >= 0; --eu) {
        const ScrollMonomial m{{a, b}, eu, deg - eu};
        w2_index.emplace(m, w2_index.size());
      }
    }
  const std::size_t m = w2_index.size();
  if (m != scroll_h0L2(k)) throw InvariantViolation("scroll W2 count mismatch");

  MulTable table(field, v1.size(), m);
  Vector unit(m, 0);
  for (std::size_t i = 0; i < v1.size(); ++i)
    for (std::size_t j = 0; j < v1.size(); ++j) {
      std::vector<int> fib{v1[i].fibre[0], v1[j].fibre[0]};
      std::sort(fib.begin(), fib.end());
      const ScrollMonomial prod{fib, v1[i].eu + v1[j].eu, v1[i].ev + v1[j].ev};
      std::fill(unit.begin(), unit.end(), 0);
      unit[w2_index.at(prod)] = 1;
      table.set_product(i, j, unit);
    }
  return table;
}

// ---------------------------------------------------------------------------
// Complete intersections

namespace {

std::vector<std::pair<int, int>> quadric_monomials(int vars) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < vars; ++j)
    for (int i = 0; i <= j; ++i) out.emplace_back(i, j);
  return out;
}

}  // namespace

CIFixture make_ci_fixture(int genus, PrimeField field, std::uint64_t seed) {
  if (genus != 4 && genus != 5)
    throw UnsupportedGenus("complete-intersection fixtures exist for genus 4 and 5, not " +
                           std::to_string(genus));
  CIFixture fx;
  fx.genus = genus;
  fx.field = field;
  fx.seed = seed;
  const int vars = genus;
  const std::size_t count = genus == 5 ? 3 : 1;
  const std::size_t monos = quadric_monomials(vars).size();
  Rng rng = Rng::derive(seed, 0xC1);
  for (std::size_t q = 0; q < count; ++q) {
    Vector coeffs(monos);
    for (auto& c : coeffs) c = rng.residue(field);
    fx.quadrics.push_back(std::move(coeffs));
  }
  return fx;
}

MulTable ci_mul_table(const CIFixture& fx) {
  const int vars = fx.genus;
  const auto monos = quadric_monomials(vars);
  const std::size_t N = monos.size();
  std::vector<Vector> ambient;
  for (std::size_t i = 0; i < N; ++i) {
    Vector e(N, 0);
    e[i] = 1;
    ambient.push_back(std::move(e));
  }
  const QuotientSpace w2(ambient, fx.quadrics, N, fx.field);
  if (w2.subspace_dimension() != fx.quadrics.size())
    throw DegenerateInstance("random quadrics are linearly dependent");
  MulTable table(fx.field, static_cast<std::size_t>(vars), w2.dimension());
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t i = 0; i < N; ++i) index[monos[i]] = i;
  for (int i = 0; i < vars; ++i)
    for (int j = 0; j < vars; ++j) {
      const auto key = std::minmax(i, j);
      table.set_product(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                        w2.projection_table()[index.at({key.first, key.second})]);
    }
  return table;
}

MulTable ci_mul_table(int genus, PrimeField field, std::uint64_t seed) {
  return ci_mul_table(make_ci_fixture(genus, field, seed));
}

// ---------------------------------------------------------------------------
// Self checks

bool SelfCheckReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& SelfCheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw Error("no self check named " + name);
}

SelfCheckReport model_selfcheck(const NodalCurve& curve) {
  SelfCheckReport report;
  const PrimeField& F = curve.field;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  bool distinct = true;
  for (std::size_t i = 0; i < curve.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < curve.nodes.size(); ++j)
      if (curve.nodes[i] == curve.nodes[j]) distinct = false;
  add("nodes_distinct", distinct);

  const bool nonzero = std::any_of(curve.equation.begin(), curve.equation.end(), [](Residue x) { return x != 0; });
  add("equation_nonzero", nonzero && curve.equation.size() == curve.space.size());

  bool singular = true, nondegenerate = true;
  std::string sing_detail, node_detail;
  for (std::size_t i = 0; i < curve.nodes.size() && nonzero; ++i) {
    const auto& pt = curve.nodes[i];
    const auto d = [&](int du, int dv) { return curve.space.derivative(curve.equation, pt, du, dv, F); };
    if (d(0, 0) || d(1, 0) || d(0, 1)) {
      singular = false;
      sing_detail = "node " + std::to_string(i) + " is not a singular point";
    }
    // 2x2 Hessian of the affine equation; the Taylor coefficients are half
    // the second derivatives, which does not affect nondegeneracy.
    const Residue huu = d(2, 0), huv = d(1, 1), hvv = d(0, 2);
    if (F.sub(F.mul(huu, hvv), F.mul(huv, huv)) == 0) {
      nondegenerate = false;
      node_detail = "node " + std::to_string(i) + " has a degenerate tangent cone";
    }
  }
  add("nodes_singular", singular && nonzero, sing_detail);
  add("nodes_nondegenerate", nondegenerate && nonzero, node_detail);

  std::vector<Vector> adjoints;
  try {
    adjoints = adjoint_basis(curve);
    add("adjoint_dimension", true, std::to_string(adjoints.size()));
  } catch (const DegenerateInstance& e) {
    add("adjoint_dimension", false, e.what());
  }
  if (adjoints.empty() || !report.all_passed()) {
    add("w2_dimension", false, "skipped");
    add("mu_symmetric", false, "skipped");
    add("mu_surjective", false, "skipped");
    return report;
  }
  try {
    const MulTable table = quotient_table(curve, adjoints);
    add("w2_dimension", true, std::to_string(table.h0L2()));
    add("mu_symmetric", table.is_symmetric());
    add("mu_surjective", table.is_surjective());
  } catch (const DegenerateInstance& e) {
    add("w2_dimension", false, e.what());
    add("mu_symmetric", false, "skipped");
    add("mu_surjective", false, "skipped");
  }
  return report;
}

SelfCheckReport table_selfcheck(const MulTable& table, std::size_t expected_h0L,
                                std::size_t expected_h0L2) {
  SelfCheckReport report;
  report.checks.push_back({"h0L", table.h0L() == expected_h0L, std::to_string(table.h0L())});
  report.checks.push_back({"h0L2", table.h0L2() == expected_h0L2, std::to_string(table.h0L2())});
  report.checks.push_back({"mu_symmetric", table.is_symmetric(), {}});
  report.checks.push_back({"mu_surjective", table.is_surjective(), {}});
  return report;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::ordered_json to_json(const NodalCurve& curve) {
  nlohmann::ordered_json j;
  j["schema"] = kModelSchemaVersion;
  j["kind"] = curve.is_plane() ? "plane" : "bidegree";
  j["prime"] = curve.field.modulus();
  j["seed"] = curve.seed;
  j["attempt"] = curve.attempt;
  if (curve.is_plane()) {
    j["degree"] = curve.space.degree_a();
  } else {
    j["bidegree"] = {curve.space.degree_a(), curve.space.degree_b()};
  }
  j["genus"] = curve.genus();
  auto nodes = nlohmann::ordered_json::array();
  for (const auto& n : curve.nodes) nodes.push_back({n.u, n.v});
  j["nodes"] = std::move(nodes);
  j["equation"] = curve.equation;
  return j;
}

NodalCurve curve_from_json(const nlohmann::ordered_json& doc) {
  try {
    if (doc.at("schema").get<int>() != kModelSchemaVersion) throw Error("unsupported model schema");
    NodalCurve c;
    c.field = PrimeField(doc.at("prime").get<std::uint32_t>());
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.attempt = doc.at("attempt").get<unsigned>();
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "plane")
      c.space = FormSpace::plane(doc.at("degree").get<int>());
    else if (kind == "bidegree")
      c.space = FormSpace::bidegree(doc.at("bidegree").at(0).get<int>(), doc.at("bidegree").at(1).get<int>());
    else
      throw Error("unknown model kind " + kind);
    for (const auto& n : doc.at("nodes"))
      c.nodes.push_back({n.at(0).get<Residue>() % c.field.modulus(), n.at(1).get<Residue>() % c.field.modulus()});
    c.equation = doc.at("equation").get<Vector>();
    if (c.equation.size() != c.space.size()) throw Error("equation length does not match degree");
    for (auto& x : c.equation) x %= c.field.modulus();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model document: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const CIFixture& fx) {
  nlohmann::ordered_json j;
  j["schema"] = kModelSchemaVersion;
  j["kind"] = "complete_intersection";
  j["prime"] = fx.field.modulus();
  j["seed"] = fx.seed;
  j["genus"] = fx.genus;
  j["quadrics"] = fx.quadrics;
  return j;
}

}  // namespace syzlab
