#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "syzlab/dvr.hpp"
#include "syzlab/errors.hpp"
#include "syzlab/forms.hpp"
#include "syzlab/koszul.hpp"
#include "syzlab/matrix.hpp"
#include "syzlab/models.hpp"
#include "syzlab/rng.hpp"

using namespace syzlab;

namespace {

// Textbook elimination on a dense copy; the oracle for every rank below.
std::size_t naive_rank(const ExactMatrix& m) {
  const std::uint64_t p = m.field().modulus();
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  auto inv = [p](std::uint64_t x) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t iv = inv(a[r][c]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const std::uint64_t f = a[i][c] * iv % p;
      if (f == 0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
    }
    ++r;
  }
  return r;
}

ExactMatrix random_matrix(std::size_t rows, std::size_t cols, double density, PrimeField F, Rng& rng) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (static_cast<double>(rng.below(1000)) < density * 1000) t.push_back({i, j, rng.nonzero_residue(F)});
  return ExactMatrix::from_triplets(rows, cols, F, t);
}

// Low-rank matrix A * B with inner dimension r.
ExactMatrix low_rank(std::size_t rows, std::size_t cols, std::size_t r, PrimeField F, Rng& rng) {
  return multiply(random_matrix(rows, r, 1.0, F, rng), random_matrix(r, cols, 1.0, F, rng));
}

bool in_kernel(const ExactMatrix& m, const Vector& v) {
  const Vector out = m.apply(v);
  return std::all_of(out.begin(), out.end(), [](Residue x) { return x == 0; });
}

}  // namespace

TEST_CASE("rank examples") {
  const PrimeField F;
  CHECK(rank(ExactMatrix::identity(3, F)) == 3);
  CHECK(rank(ExactMatrix(4, 7, F)) == 0);
  CHECK(rank(build_delta1(5, 1, F)) == 10);
  CHECK(naive_rank(build_delta1(5, 1, F)) == 10);
}

TEST_CASE("rank agrees with the naive oracle on every path") {
  const PrimeField F;
  Rng rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t rows = 1 + rng.below(40), cols = 1 + rng.below(40);
    const ExactMatrix m = trial % 3 == 0 ? low_rank(rows, cols, 1 + rng.below(8), F, rng)
                                         : random_matrix(rows, cols, 0.02 + 0.3 * static_cast<double>(rng.below(100)) / 100, F, rng);
    const std::size_t expected = naive_rank(m);
    CHECK(rank(m) == expected);
    CHECK(rank(m, {RankPath::Dense}) == expected);
    CHECK(rank(m, {RankPath::Sparse}) == expected);
    CHECK(rank(m, {RankPath::Sparse, 1, 1.1}) == expected);  // never switches to dense
    CHECK(rank(m, {RankPath::Sparse, 1, 0.0}) == expected);  // switches immediately
    CHECK(rank(m, {RankPath::Dense, 4}) == expected);
  }
}

TEST_CASE("rank of transpose equals rank on 200 random matrices") {
  const PrimeField F(1009);
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.below(25), cols = 1 + rng.below(25);
    const ExactMatrix m = trial % 2 ? low_rank(rows, cols, 1 + rng.below(6), F, rng)
                                    : random_matrix(rows, cols, 0.2, F, rng);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("rank plus kernel dimension equals columns") {
  const PrimeField F;
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng.below(20), cols = 1 + rng.below(20);
    const ExactMatrix m = low_rank(rows, cols, rng.below(7) + 1, F, rng);
    const auto ker = kernel_basis(m);
    CHECK(rank(m) + ker.size() == cols);
    for (const auto& v : ker) CHECK(in_kernel(m, v));
    if (!ker.empty()) CHECK(rank(ExactMatrix::from_rows(ker, cols, F)) == ker.size());
  }
}

TEST_CASE("kernel_basis examples") {
  const PrimeField F;
  CHECK(kernel_basis(ExactMatrix(3, 5, F)).size() == 5);
  Rng rng(1);
  ExactMatrix inv = ExactMatrix::identity(6, F);
  for (int i = 0; i < 3; ++i) inv = multiply(inv, multiply(ExactMatrix::identity(6, F), random_matrix(6, 6, 1.0, F, rng)));
  if (rank(inv) == 6) CHECK(kernel_basis(inv).empty());
  const MulTable ci = ci_mul_table(5, F, 1);
  CHECK(kernel_basis(ci.flattening().transpose()).size() == 13);
}

TEST_CASE("solve_homogeneous examples") {
  const PrimeField F;
  Rng rng(77);
  const FormSpace septics = FormSpace::plane(7);
  std::vector<AffinePoint> nodes;
  for (int i = 0; i < 8; ++i) nodes.push_back({rng.residue(F), rng.residue(F)});
  CHECK(nodal_equations(septics, nodes, F).size() == 12);

  const FormSpace quartics = FormSpace::plane(4);
  std::vector<Vector> rows;
  for (const auto& pt : nodes) rows.push_back(quartics.derivative_functional(pt, 0, 0, F));
  CHECK(solve_homogeneous(ExactMatrix::from_rows(rows, quartics.size(), F)).size() == 7);
  CHECK(solve_homogeneous(ExactMatrix(0, 9, F)).size() == 9);
}

TEST_CASE("rref is reduced and spans the row space") {
  const PrimeField F(1009);
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const ExactMatrix m = low_rank(12, 15, 1 + rng.below(10), F, rng);
    const RowEchelon e = rref(m);
    CHECK(e.rank() == naive_rank(m));
    for (std::size_t i = 0; i < e.rank(); ++i) {
      CHECK(e.rows[i][e.pivots[i]] == 1);
      for (std::size_t k = 0; k < e.rank(); ++k)
        if (k != i) CHECK(e.rows[k][e.pivots[i]] == 0);
    }
    CHECK(std::is_sorted(e.pivots.begin(), e.pivots.end()));
    // stacking the echelon rows onto M does not raise the rank
    std::vector<Vector> stacked = e.rows;
    const Vector d = m.dense_data();
    for (std::size_t i = 0; i < m.rows(); ++i) stacked.emplace_back(d.begin() + i * 15, d.begin() + (i + 1) * 15);
    CHECK(rank(ExactMatrix::from_rows(stacked, 15, F)) == e.rank());
  }
}

TEST_CASE("storage conversions preserve entries") {
  const PrimeField F;
  Rng rng(2);
  const ExactMatrix m = random_matrix(9, 13, 0.3, F, rng);
  CHECK(m.to_dense() == m.to_sparse());
  CHECK(m.to_dense().storage() == ExactMatrix::Storage::Dense);
  CHECK(m.transpose().transpose() == m);
  const ExactMatrix dup = ExactMatrix::from_triplets(2, 2, F, {{0, 0, 3}, {0, 0, F.neg(3)}, {1, 1, 2}, {1, 1, 2}});
  CHECK(dup.at(0, 0) == 0);
  CHECK(dup.at(1, 1) == 4);
  CHECK(dup.nnz() == 1);
  CHECK_THROWS(ExactMatrix::from_triplets(2, 2, F, {{2, 0, 1}}));
}

TEST_CASE("multiply matches hand product") {
  const PrimeField F(7);
  const ExactMatrix a = ExactMatrix::from_dense(2, 3, F, {1, 2, 3, 4, 5, 6});
  const ExactMatrix b = ExactMatrix::from_dense(3, 2, F, {1, 0, 0, 1, 1, 1});
  CHECK(multiply(a, b) == ExactMatrix::from_dense(2, 2, F, {4 % 7, 5 % 7, 10 % 7, 11 % 7}));
}

TEST_CASE("quotient spaces") {
  const PrimeField F;
  auto unit = [](std::size_t n, std::size_t i) {
    Vector e(n, 0);
    e[i] = 1;
    return e;
  };
  const std::vector<Vector> ambient = {unit(4, 0), unit(4, 1), unit(4, 2)};
  const QuotientDims unchanged = quotient_dims(ambient, {}, 4, F);
  CHECK(unchanged.dimension == 3);
  CHECK(unchanged.projection.size() == 3);

  const QuotientSpace q(ambient, {Vector{1, 1, 0, 0}}, 4, F);
  CHECK(q.dimension() == 2);
  CHECK(q.subspace_dimension() == 1);
  CHECK(q.coordinates(Vector{1, 1, 0, 0}) == Vector{0, 0});
  CHECK(q.coordinates(Vector{1, 0, 0, 0}) == q.coordinates(Vector{0, F.neg(1), 0, 0}));
  CHECK(q.coordinates(Vector{1, 0, 0, 0}) == q.coordinates(Vector{2, 1, 0, 0}));
  CHECK_THROWS_AS(q.coordinates(Vector{0, 0, 0, 1}), NotASubspace);
  CHECK_THROWS_AS(QuotientSpace(ambient, {unit(4, 3)}, 4, F), NotASubspace);
}

TEST_CASE("quotient coordinates are linear and kill the subspace") {
  const PrimeField F(1009);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    std::vector<Vector> amb;
    for (int i = 0; i < 8; ++i) {
      Vector v(n);
      for (auto& x : v) x = rng.residue(F);
      amb.push_back(v);
    }
    std::vector<Vector> sub;
    for (int i = 0; i < 3; ++i) {
      Vector v(n, 0);
      for (const auto& a : amb) F.axpy(v, rng.residue(F), a);
      sub.push_back(v);
    }
    const QuotientSpace q(amb, sub, n, F);
    CHECK(q.dimension() == 5);
    for (const auto& s : sub) {
      const Vector c = q.coordinates(s);
      CHECK(std::all_of(c.begin(), c.end(), [](Residue x) { return x == 0; }));
    }
    const Residue a = rng.residue(F);
    Vector combo = amb[0];
    F.axpy(combo, a, amb[1]);
    Vector expect = q.coordinates(amb[0]);
    F.axpy(expect, a, q.coordinates(amb[1]));
    CHECK(q.coordinates(combo) == expect);
  }
}

TEST_CASE("matrix market round trip") {
  const PrimeField F;
  Rng rng(6);
  const ExactMatrix m = random_matrix(7, 5, 0.4, F, rng);
  std::stringstream ss;
  write_matrix_market(ss, m);
  CHECK(ss.str().rfind("%%MatrixMarket matrix coordinate integer general", 0) == 0);
  CHECK(read_matrix_market(ss, F) == m);
  std::stringstream bad("not a matrix");
  CHECK_THROWS(read_matrix_market(bad, F));
}

TEST_CASE("dense and sparse ranks agree on Koszul matrices up to genus 7") {
  const PrimeField F;
  const NodalCurve c = fit_nodal_bideg(4, F, 3);
  for (const MulTable& t : {ci_mul_table(5, F, 2), scroll_mul_table(4, F), mul_table_quotient(c)})
    for (std::size_t p = 1; p + 2 <= t.h0L(); ++p) {
      const ExactMatrix d2 = build_delta2(t, p);
      CHECK(rank(d2, {RankPath::Dense}) == rank(d2, {RankPath::Sparse}));
      CHECK(rank(d2, {RankPath::Sparse, 1, 1.1}) == rank(d2, {RankPath::Dense, 3}));
    }
}

// ---------------------------------------------------------------------------
// DVR

namespace {

// Leibniz determinant over GF(p)[t]; the oracle for small sizes.
GFPoly leibniz_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GFPoly det(m.field());
  do {
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    GFPoly term = GFPoly::constant(m.field(), 1);
    for (std::size_t i = 0; i < n; ++i) term = term * m.at(i, perm[i]);
    det = sign > 0 ? det + term : det - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::size_t constant_corank(const PolyMatrix& m) {
  const auto c = m.constant_terms();
  return m.size() - naive_rank(ExactMatrix::from_dense(m.size(), m.size(), m.field(), c));
}

}  // namespace

TEST_CASE("dvr examples") {
  const PrimeField F;
  PolyMatrix d(3, F, 1);
  d.set(0, 0, GFPoly::monomial(F, 1, 1));
  d.set(1, 1, GFPoly::monomial(F, 1, 1));
  d.set(2, 2, GFPoly::constant(F, 1));
  auto r = dvr_degeneracy_check(d);
  CHECK(r.corank0 == 2);
  CHECK(r.detval == 2);
  CHECK(r.ok);

  PolyMatrix j(2, F, 1);
  j.set(0, 0, GFPoly::monomial(F, 1, 1));
  j.set(0, 1, GFPoly::constant(F, 1));
  j.set(1, 1, GFPoly::monomial(F, 1, 1));
  r = dvr_degeneracy_check(j);
  CHECK(r.corank0 == 1);
  CHECK(r.detval == 2);
  CHECK(r.ok);

  PolyMatrix one(1, F, 2);
  one.set(0, 0, GFPoly::monomial(F, 1, 2));
  r = dvr_degeneracy_check(one);
  CHECK(r.corank0 == 1);
  CHECK(r.detval == 2);

  PolyMatrix singular(2, F, 1);
  singular.set(0, 0, GFPoly::monomial(F, 1, 1));
  singular.set(1, 0, GFPoly::monomial(F, 2, 1));
  CHECK_THROWS_AS(dvr_degeneracy_check(singular), SingularMatrix);
  CHECK_THROWS(one.set(0, 0, GFPoly::monomial(F, 1, 3)));
}

TEST_CASE("dvr check matches Leibniz determinant and Smith form") {
  const PrimeField F(1009);
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<unsigned> exps(n);
    for (auto& e : exps) e = static_cast<unsigned>(rng.below(4));
    const PolyMatrix m = random_smith_instance(exps, F, rng);
    const auto r = dvr_degeneracy_check(m);
    const GFPoly det = leibniz_det(m);
    REQUIRE(!det.is_zero());
    CHECK(r.detval == static_cast<std::size_t>(det.valuation()));
    CHECK(r.corank0 == constant_corank(m));
    CHECK(r.detval == std::accumulate(exps.begin(), exps.end(), 0u));
    CHECK(r.corank0 == static_cast<std::size_t>(std::count_if(exps.begin(), exps.end(), [](unsigned e) { return e > 0; })));
    CHECK(r.ok);
  }
}

TEST_CASE("dvr check on general polynomial matrices") {
  const PrimeField F(1009);
  Rng rng(8);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(4);
    PolyMatrix m(n, F, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vector c(1 + rng.below(4));
        for (auto& x : c) x = rng.below(3) == 0 ? 0 : rng.residue(F);
        // bias towards entries divisible by t
        if (rng.below(2)) c[0] = 0;
        m.set(i, j, GFPoly(F, c));
      }
    const GFPoly det = leibniz_det(m);
    if (det.is_zero()) {
      CHECK_THROWS_AS(dvr_degeneracy_check(m), SingularMatrix);
      continue;
    }
    const auto r = dvr_degeneracy_check(m);
    CHECK(r.detval == static_cast<std::size_t>(det.valuation()));
    CHECK(r.corank0 == constant_corank(m));
    CHECK(r.ok);
    ++checked;
  }
  CHECK(checked > 100);
}
