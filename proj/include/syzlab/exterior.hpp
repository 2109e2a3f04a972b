#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace syzlab {

/// C(n, r) in 64 bits for the small ranges used by exterior bases; zero
/// outside 0 <= r <= n.
std::uint64_t binom64(long n, long r);

/// A basis element e_{i1} ^ ... ^ e_ip of an exterior power, given by its
/// strictly increasing 1-based indices.
///
/// Basis order is colexicographic: rank({i1 < ... < ip}) = sum_j C(ij - 1, j),
/// so rank and unrank do not depend on the ambient dimension.
class ExteriorIndex {
 public:
  /// Throws BadIndex unless strictly increasing with entries >= 1.
  explicit ExteriorIndex(std::vector<int> indices);

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t degree() const noexcept { return indices_.size(); }
  std::uint64_t rank() const noexcept;

  friend bool operator==(const ExteriorIndex&, const ExteriorIndex&) = default;

 private:
  std::vector<int> indices_;
};

/// Colex rank of a strictly increasing 1-based index tuple.
std::uint64_t subset_rank(std::span<const int> indices);
/// Inverse of subset_rank for tuples of length p.
ExteriorIndex subset_unrank(std::uint64_t rank, int p);

/// All p-subsets of {1..n} in colex order (position == rank).
std::vector<std::vector<int>> colex_subsets(int n, int p);

}  // namespace syzlab
