#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "syzlab/prime_field.hpp"

namespace syzlab {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Residue value;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Immutable matrix over GF(p), stored either dense (row-major) or as a
/// sorted list of unique nonzero triplets.
class ExactMatrix {
 public:
  enum class Storage { Dense, Sparse };
  /// Constructors pick dense storage above this fraction of nonzeros.
  static constexpr double kDenseThreshold = 0.25;

  ExactMatrix(std::size_t rows, std::size_t cols, PrimeField field);  // zero, sparse

  static ExactMatrix identity(std::size_t n, PrimeField field);
  /// Duplicate (row, col) entries are summed; zeros are dropped.
  static ExactMatrix from_triplets(std::size_t rows, std::size_t cols, PrimeField field,
                                   std::vector<Triplet> entries,
                                   std::optional<Storage> storage = std::nullopt);
  static ExactMatrix from_dense(std::size_t rows, std::size_t cols, PrimeField field,
                                Vector data, std::optional<Storage> storage = std::nullopt);
  /// Matrix whose rows are the given vectors (all of length cols).
  static ExactMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols,
                               PrimeField field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }
  Storage storage() const noexcept { return storage_; }
  std::size_t nnz() const noexcept;
  double density() const noexcept;

  Residue at(std::size_t i, std::size_t j) const;
  /// Row-major dense copy.
  Vector dense_data() const;
  /// Row-major sorted nonzero entries.
  std::vector<Triplet> triplets() const;

  ExactMatrix to_dense() const;
  ExactMatrix to_sparse() const;
  ExactMatrix transpose() const;
  bool is_zero() const noexcept { return nnz() == 0; }
  Vector apply(std::span<const Residue> v) const;

  friend ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
  /// Same shape and entries, regardless of storage.
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  Storage storage_;
  Vector dense_;
  std::vector<Triplet> sparse_;
};

enum class RankPath { Auto, Dense, Sparse };

struct RankOptions {
  RankPath path = RankPath::Auto;
  unsigned threads = 1;
  /// Sparse elimination hands the active part to the dense kernel once the
  /// stored pivot rows exceed this average fill.
  double dense_switch = ExactMatrix::kDenseThreshold;
};

/// Rank over GF(p). Identical results for every path and worker count.
std::size_t rank(const ExactMatrix& m, const RankOptions& options = {});

/// Reduced row echelon form of the row space.
struct RowEchelon {
  std::vector<Vector> rows;  // reduced, leading entry 1
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return rows.size(); }
};
RowEchelon rref(const ExactMatrix& m);

/// Basis of the right null space (cols - rank vectors, each with M v = 0).
std::vector<Vector> kernel_basis(const ExactMatrix& m);

/// Solution space of constraints * x = 0; same as kernel_basis, kept as a
/// separate name for model-building call sites.
inline std::vector<Vector> solve_homogeneous(const ExactMatrix& constraints) {
  return kernel_basis(constraints);
}

/// A quotient ambient / subspace of subspaces of GF(p)^n.
///
/// Classes are represented through a fixed complement: vectors are reduced
/// modulo the echelon form of the subspace, and the reduced ambient vectors
/// are put in reduced echelon form. The coordinates of a class are the
/// entries of its reduced representative at the pivot columns of that
/// complement basis.
class QuotientSpace {
 public:
  /// Throws NotASubspace unless span(subspace) is contained in span(ambient).
  QuotientSpace(const std::vector<Vector>& ambient_basis,
                const std::vector<Vector>& subspace_basis, std::size_t n, PrimeField field);

  std::size_t dimension() const noexcept { return complement_.rank(); }
  std::size_t ambient_dimension() const noexcept { return ambient_dim_; }
  std::size_t subspace_dimension() const noexcept { return sub_.rank(); }

  /// Coordinates of the class of v; throws NotASubspace if v is not in the
  /// ambient space.
  Vector coordinates(std::span<const Residue> v) const;
  /// Coordinates of each ambient basis vector.
  const std::vector<Vector>& projection_table() const noexcept { return table_; }

 private:
  Vector reduce_mod_subspace(std::span<const Residue> v) const;

  PrimeField field_;
  std::size_t n_;
  std::size_t ambient_dim_;
  RowEchelon sub_;
  RowEchelon complement_;
  std::vector<Vector> table_;
};

struct QuotientDims {
  std::size_t dimension;
  std::vector<Vector> projection;
};
QuotientDims quotient_dims(const std::vector<Vector>& ambient_basis,
                           const std::vector<Vector>& subspace_basis, std::size_t n,
                           PrimeField field);

/// MatrixMarket coordinate format, 1-based, canonical residues.
void write_matrix_market(std::ostream& out, const ExactMatrix& m);
ExactMatrix read_matrix_market(std::istream& in, PrimeField field);

}  // namespace syzlab
