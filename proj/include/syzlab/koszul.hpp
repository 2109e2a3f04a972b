#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syzlab/matrix.hpp"
#include "syzlab/prime_field.hpp"

namespace syzlab {

/// The degree-1 and degree-2 section spaces V = H^0(L), W2 = H^0(L^2) of an
/// embedded variety together with the multiplication V x V -> W2.
///
/// This is the whole input to the linear-strand Koszul computation.
class MulTable {
 public:
  MulTable(PrimeField field, std::size_t h0L, std::size_t h0L2);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t h0L() const noexcept { return h0L_; }
  std::size_t h0L2() const noexcept { return h0L2_; }

  /// Coordinates in W2 of the product of basis sections i and j.
  std::span<const Residue> product(std::size_t i, std::size_t j) const;
  void set_product(std::size_t i, std::size_t j, std::span<const Residue> value);

  bool is_symmetric() const;
  /// The (h0L^2) x h0L2 matrix whose rows are the products.
  ExactMatrix flattening() const;
  /// rank(flattening) == h0L2.
  bool is_surjective() const;

  friend bool operator==(const MulTable&, const MulTable&) = default;

 private:
  PrimeField field_;
  std::size_t h0L_;
  std::size_t h0L2_;
  Vector mu_;
};

/// delta1 : L^{p+1} V -> L^p V (x) V,
///   e_I -> sum_j (-1)^{j-1} e_{I \ i_j} (x) e_{i_j}.
/// Rows are (exterior index, tensor index) pairs ordered colex-major, i.e.
/// row = rank(J) * n + a. Requires 0 <= p and p + 1 <= n.
ExactMatrix build_delta1(std::size_t n, std::size_t p, PrimeField field);

/// delta2 : L^p V (x) V -> L^{p-1} V (x) W2,
///   e_I (x) a -> sum_j (-1)^{j-1} e_{I \ i_j} (x) mu(i_j, a).
/// Columns are rank(I) * h0L + a, rows rank(J) * h0L2 + w. Requires
/// 1 <= p <= h0L - 1.
ExactMatrix build_delta2(const MulTable& table, std::size_t p);

struct KoszulOptions {
  unsigned threads = 1;
  /// When set, every delta matrix is written here in MatrixMarket format.
  std::optional<std::string> dump_dir;
  std::string dump_prefix = "koszul";
};

struct StrandEntry {
  std::size_t p = 0;
  std::size_t dim = 0;          // dim K_{p,1}
  std::size_t nullity2 = 0;     // dim ker delta2
  std::size_t rank1 = 0;        // rank delta1
  std::size_t rank2 = 0;        // rank delta2
  std::size_t delta1_rows = 0, delta1_cols = 0;
  std::size_t delta2_rows = 0, delta2_cols = 0;
  bool composition_zero = false;  // delta2 * delta1 == 0
  double elapsed_ms = 0;
};

struct StrandResult {
  std::size_t h0L = 0;
  std::size_t h0L2 = 0;
  std::vector<StrandEntry> entries;  // p = 1 .. h0L - 2

  std::vector<std::size_t> dims() const;
  const StrandEntry& at_p(std::size_t p) const;
  /// K_{p,1} = 0 implies K_{p',1} = 0 for all p' > p.
  bool vanishing_propagates() const;
  bool all_compositions_zero() const;
};

/// One strand entry with all its bookkeeping. Throws IndexOutOfRange unless
/// 1 <= p <= h0L - 2, and InvariantViolation if delta1 is not injective.
StrandEntry koszul_entry(const MulTable& table, std::size_t p, const KoszulOptions& options = {});

/// dim K_{p,1} = nullity(delta2) - C(h0L, p + 1).
std::size_t kp1(const MulTable& table, std::size_t p, const KoszulOptions& options = {});

/// h^0(L^j Q (x) I(1)) = K_{h0L - j, 1}. Throws IndexOutOfRange unless
/// 2 <= j <= h0L - 1.
std::size_t extra_syzygies(const MulTable& table, std::size_t j,
                           const KoszulOptions& options = {});

/// K_{p,1} for p = 1 .. h0L - 2.
StrandResult linear_strand(const MulTable& table, const KoszulOptions& options = {});

}  // namespace syzlab
