#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "syzlab/forms.hpp"
#include "syzlab/koszul.hpp"

namespace syzlab {

inline constexpr int kModelSchemaVersion = 1;
inline constexpr unsigned kMaxFitAttempts = 20;

/// A curve given by a plane form of degree d, or a form of bidegree (a, b)
/// on P^1 x P^1, with ordinary nodes at affine GF(p)-points and no other
/// singularities (the latter is not certified; see model_selfcheck).
struct NodalCurve {
  FormSpace space = FormSpace::plane(0);  // the space of the equation
  PrimeField field{};
  std::uint64_t seed = 0;
  unsigned attempt = 0;  // retry stream that produced this instance
  std::vector<AffinePoint> nodes;
  Vector equation;

  bool is_plane() const noexcept { return space.surface() == FormSpace::Surface::Plane; }
  int arithmetic_genus() const;
  int genus() const { return arithmetic_genus() - static_cast<int>(nodes.size()); }
  /// Degree d - 3, resp. bidegree (a - 2, b - 2): the adjoint forms.
  FormSpace adjoint_space() const;
  /// Degree 2d - 6, resp. (2a - 4, 2b - 4): products of two adjoints.
  FormSpace adjoint_square_space() const;
  /// Degree d - 6, resp. (a - 4, b - 4): F times these is zero on the curve.
  FormSpace equation_multiplier_space() const;
  std::string describe() const;
};

/// Plane curve of degree d with `nodes` random nodes. Retries up to
/// kMaxFitAttempts derived seeds; throws DegenerateInstance when all fail.
NodalCurve fit_nodal_plane(int degree, int nodes, PrimeField field, std::uint64_t seed);

/// Bidegree (a, b) curve on P^1 x P^1 with `nodes` random nodes.
NodalCurve fit_nodal_bidegree(int a, int b, int nodes, PrimeField field, std::uint64_t seed);

/// Bidegree shape used for the k-gonal models of genus 2k - 1: (k, 4) with
/// k - 2 nodes, or (k, k + 1) with k^2 - 3k + 1 nodes.
enum class GonalShape { K4, KK1 };
struct BidegreeParams {
  int a, b, nodes;
};
BidegreeParams gonal_params(int k, GonalShape shape);
/// k-gonal curve of genus 2k - 1: the projection to the first factor has
/// degree b and the one to the second factor has degree k.
NodalCurve fit_nodal_bideg(int k, PrimeField field, std::uint64_t seed,
                           GonalShape shape = GonalShape::KK1);

/// Plane parameters (d, delta) = (k + 3, (k^2 - k + 4) / 2): genus 2k - 1 and
/// gonality at most k + 1 (projection from a node).
struct PlaneParams {
  int degree, nodes;
};
PlaneParams maxcliff_params(int k);

/// Curve equations through the given nodes, with F, F_u, F_v vanishing at
/// each node. Returns a basis of the solution space.
std::vector<Vector> nodal_equations(const FormSpace& space, const std::vector<AffinePoint>& nodes,
                                    const PrimeField& field);

/// Basis of H^0(K): adjoint forms through all nodes. Throws
/// DegenerateInstance if the dimension differs from the genus.
std::vector<Vector> adjoint_basis(const NodalCurve& curve);

/// W2 = {adjoint-square forms singular at every node} / F * (multipliers),
/// with mu given by products of adjoint forms. Throws DegenerateInstance
/// unless dim W2 = 3g - 3.
MulTable mul_table_quotient(const NodalCurve& curve);

/// n distinct smooth affine points of the curve, none a node. Throws
/// InsufficientPoints if they cannot be found.
std::vector<AffinePoint> sample_points(const NodalCurve& curve, std::size_t n, std::uint64_t seed);

/// Same invariants as mul_table_quotient, computed from values at n points:
/// W2 is the span of pointwise products of adjoint values. Requires
/// n >= 8g - 7.
MulTable mul_table_eval(const NodalCurve& curve, std::size_t n, std::uint64_t seed);
MulTable mul_table_eval(const NodalCurve& curve);  // n = 10g

/// Section ring of the rational normal scroll P(O(1)^{k-2} + O(2)) in its
/// embedding by O(1): h0L = 2k - 1.
MulTable scroll_mul_table(int k, PrimeField field);
std::size_t scroll_h0L2(int k);

/// Random complete-intersection fixtures: a canonical genus-5 curve (three
/// quadrics in P^4) or the quadric containing a canonical genus-4 curve.
struct CIFixture {
  int genus = 5;
  PrimeField field{};
  std::uint64_t seed = 0;
  std::vector<Vector> quadrics;  // over the monomials x_i x_j, i <= j, colex
};
CIFixture make_ci_fixture(int genus, PrimeField field, std::uint64_t seed);
MulTable ci_mul_table(const CIFixture& fixture);
MulTable ci_mul_table(int genus, PrimeField field, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct SelfCheckReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  const CheckResult& find(const std::string& name) const;
};

/// Node, adjoint, W2 and multiplication checks of a nodal model. Failures
/// are reported, never thrown.
SelfCheckReport model_selfcheck(const NodalCurve& curve);
/// Symmetry, surjectivity and the expected dimensions of a table.
SelfCheckReport table_selfcheck(const MulTable& table, std::size_t expected_h0L,
                                std::size_t expected_h0L2);

nlohmann::ordered_json to_json(const NodalCurve& curve);
/// Rebuilds a curve from to_json output. Throws Error on malformed input.
NodalCurve curve_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json to_json(const CIFixture& fixture);

}  // namespace syzlab
