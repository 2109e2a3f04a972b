#include "syzlab/exterior.hpp"

#include <string>

#include "syzlab/errors.hpp"

namespace syzlab {

std::uint64_t binom64(long n, long r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  std::uint64_t out = 1;
  for (long i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return out;
}

namespace {

void validate(std::span<const int> indices) {
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1) throw BadIndex("exterior index entries are 1-based");
    if (j > 0 && indices[j] <= indices[j - 1])
      throw BadIndex("exterior index must be strictly increasing");
  }
}

}  // namespace

ExteriorIndex::ExteriorIndex(std::vector<int> indices) : indices_(std::move(indices)) {
  validate(indices_);
}

std::uint64_t ExteriorIndex::rank() const noexcept {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < indices_.size(); ++j)
    r += binom64(indices_[j] - 1, static_cast<long>(j + 1));
  return r;
}

std::uint64_t subset_rank(std::span<const int> indices) {
  validate(indices);
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < indices.size(); ++j)
    r += binom64(indices[j] - 1, static_cast<long>(j + 1));
  return r;
}

ExteriorIndex subset_unrank(std::uint64_t rank, int p) {
  if (p < 0) throw BadIndex("negative exterior degree");
  std::vector<int> out(static_cast<std::size_t>(p));
  // greedy from the top: largest c with C(c, j) <= remaining
  for (int j = p; j >= 1; --j) {
    long c = j - 1;
    while (binom64(c + 1, j) <= rank) ++c;
    rank -= binom64(c, j);
    out[static_cast<std::size_t>(j - 1)] = static_cast<int>(c + 1);
  }
  return ExteriorIndex(std::move(out));
}

std::vector<std::vector<int>> colex_subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > n) return out;
  out.reserve(binom64(n, p));
  std::vector<int> cur(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) cur[static_cast<std::size_t>(j)] = j + 1;
  for (;;) {
    out.push_back(cur);
    // colex successor: bump the lowest entry that has room
    int j = 0;
    while (j < p && (j + 1 < p ? cur[j] + 1 == cur[j + 1] : cur[j] == n)) ++j;
    if (j == p) break;
    ++cur[j];
    for (int i = 0; i < j; ++i) cur[i] = i + 1;
  }
  return out;
}

}  // namespace syzlab
