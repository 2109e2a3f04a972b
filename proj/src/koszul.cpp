#include "syzlab/koszul.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>

#include "syzlab/errors.hpp"
#include "syzlab/exterior.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

MulTable::MulTable(PrimeField field, std::size_t h0L, std::size_t h0L2)
    : field_(field), h0L_(h0L), h0L2_(h0L2), mu_(h0L * h0L * h0L2, 0) {}

std::span<const Residue> MulTable::product(std::size_t i, std::size_t j) const {
  if (i >= h0L_ || j >= h0L_) throw BadIndex("MulTable::product index out of range");
  return std::span<const Residue>(mu_).subspan((i * h0L_ + j) * h0L2_, h0L2_);
}

void MulTable::set_product(std::size_t i, std::size_t j, std::span<const Residue> value) {
  if (i >= h0L_ || j >= h0L_) throw BadIndex("MulTable::set_product index out of range");
  if (value.size() != h0L2_) throw BadIndex("MulTable::set_product length mismatch");
  std::copy(value.begin(), value.end(), mu_.begin() + static_cast<std::ptrdiff_t>((i * h0L_ + j) * h0L2_));
}

bool MulTable::is_symmetric() const {
  for (std::size_t i = 0; i < h0L_; ++i)
    for (std::size_t j = i + 1; j < h0L_; ++j) {
      const auto a = product(i, j), b = product(j, i);
      if (!std::equal(a.begin(), a.end(), b.begin())) return false;
    }
  return true;
}

ExactMatrix MulTable::flattening() const {
  return ExactMatrix::from_dense(h0L_ * h0L_, h0L2_, field_, mu_);
}

bool MulTable::is_surjective() const { return rank(flattening()) == h0L2_; }

// ---------------------------------------------------------------------------

ExactMatrix build_delta1(std::size_t n, std::size_t p, PrimeField field) {
  if (p + 1 > n) throw IndexOutOfRange("build_delta1 needs p + 1 <= n");
  const auto sources = colex_subsets(static_cast<int>(n), static_cast<int>(p + 1));
  const std::size_t rows = binom64(static_cast<long>(n), static_cast<long>(p)) * n;
  std::vector<Triplet> t;
  t.reserve(sources.size() * (p + 1));
  std::vector<int> rest;
  for (std::size_t col = 0; col < sources.size(); ++col) {
    const auto& I = sources[col];
    for (std::size_t j = 0; j < I.size(); ++j) {
      rest.assign(I.begin(), I.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      const std::size_t row = subset_rank(rest) * n + static_cast<std::size_t>(I[j] - 1);
      t.push_back({row, col, j % 2 == 0 ? Residue{1} : field.neg(1)});
    }
  }
  return ExactMatrix::from_triplets(rows, sources.size(), field, std::move(t));
}

ExactMatrix build_delta2(const MulTable& table, std::size_t p) {
  const std::size_t n = table.h0L(), m = table.h0L2();
  if (p < 1 || p + 1 > n) throw IndexOutOfRange("build_delta2 needs 1 <= p <= h0L - 1");
  const PrimeField& F = table.field();
  const auto sources = colex_subsets(static_cast<int>(n), static_cast<int>(p));
  const std::size_t rows = binom64(static_cast<long>(n), static_cast<long>(p - 1)) * m;
  const std::size_t cols = sources.size() * n;
  std::vector<Triplet> t;
  std::vector<int> rest;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const auto& I = sources[s];
    for (std::size_t j = 0; j < I.size(); ++j) {
      rest.assign(I.begin(), I.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      const std::size_t base = subset_rank(rest) * m;
      const bool negative = j % 2 == 1;
      for (std::size_t a = 0; a < n; ++a) {
        const auto prod = table.product(static_cast<std::size_t>(I[j] - 1), a);
        for (std::size_t w = 0; w < m; ++w)
          if (prod[w]) t.push_back({base + w, s * n + a, negative ? F.neg(prod[w]) : prod[w]});
      }
    }
  }
  return ExactMatrix::from_triplets(rows, cols, F, std::move(t), ExactMatrix::Storage::Sparse);
}

// ---------------------------------------------------------------------------

namespace {

void dump(const ExactMatrix& m, const KoszulOptions& options, const std::string& name) {
  if (!options.dump_dir) return;
  std::filesystem::create_directories(*options.dump_dir);
  std::ofstream out(std::filesystem::path(*options.dump_dir) / (options.dump_prefix + "_" + name + ".mtx"));
  if (!out) throw Error("cannot write matrix dump into " + *options.dump_dir);
  write_matrix_market(out, m);
}

}  // namespace

StrandEntry koszul_entry(const MulTable& table, std::size_t p, const KoszulOptions& options) {
  const std::size_t n = table.h0L();
  if (p < 1 || p + 2 > n)
    throw IndexOutOfRange("K_{p,1} requested for p = " + std::to_string(p) + " outside [1, " +
                          std::to_string(n >= 2 ? n - 2 : 0) + "]");
  const auto start = std::chrono::steady_clock::now();
  StrandEntry e;
  e.p = p;
  const ExactMatrix d1 = build_delta1(n, p, table.field());
  const ExactMatrix d2 = build_delta2(table, p);
  dump(d1, options, "delta1_p" + std::to_string(p));
  dump(d2, options, "delta2_p" + std::to_string(p));
  e.delta1_rows = d1.rows();
  e.delta1_cols = d1.cols();
  e.delta2_rows = d2.rows();
  e.delta2_cols = d2.cols();
  e.composition_zero = multiply(d2, d1).is_zero();

  RankOptions ro;
  ro.threads = options.threads;
  e.rank1 = rank(d1, ro);
  const std::size_t expected = binom64(static_cast<long>(n), static_cast<long>(p + 1));
  if (e.rank1 != expected)
    throw InvariantViolation("delta1 not injective at p = " + std::to_string(p));
  e.rank2 = rank(d2, ro);
  e.nullity2 = d2.cols() - e.rank2;
  if (e.nullity2 < e.rank1)
    throw InvariantViolation("ker delta2 smaller than im delta1 at p = " + std::to_string(p) +
                             " (delta2 * delta1 != 0?)");
  e.dim = e.nullity2 - e.rank1;
  e.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

std::size_t kp1(const MulTable& table, std::size_t p, const KoszulOptions& options) {
  return koszul_entry(table, p, options).dim;
}

std::size_t extra_syzygies(const MulTable& table, std::size_t j, const KoszulOptions& options) {
  const std::size_t n = table.h0L();
  if (j < 2 || j + 1 > n)
    throw IndexOutOfRange("extra_syzygies: j = " + std::to_string(j) + " outside [2, " +
                          std::to_string(n >= 1 ? n - 1 : 0) + "]");
  return kp1(table, n - j, options);
}

StrandResult linear_strand(const MulTable& table, const KoszulOptions& options) {
  StrandResult out;
  out.h0L = table.h0L();
  out.h0L2 = table.h0L2();
  const std::size_t count = table.h0L() >= 3 ? table.h0L() - 2 : 0;
  out.entries.resize(count);
  if (options.threads <= 1 || count <= 1) {
    for (std::size_t p = 1; p <= count; ++p) out.entries[p - 1] = koszul_entry(table, p, options);
    return out;
  }
  // Entries for distinct p are independent; each worker writes its own slot.
  std::vector<std::exception_ptr> errors(count);
  KoszulOptions inner = options;
  inner.threads = 1;
  parallel_for(1, count + 1, options.threads, [&](std::size_t p) {
    try {
      out.entries[p - 1] = koszul_entry(table, p, inner);
    } catch (...) {
      errors[p - 1] = std::current_exception();
    }
  }, 1);
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

std::vector<std::size_t> StrandResult::dims() const {
  std::vector<std::size_t> d;
  for (const auto& e : entries) d.push_back(e.dim);
  return d;
}

const StrandEntry& StrandResult::at_p(std::size_t p) const {
  for (const auto& e : entries)
    if (e.p == p) return e;
  throw IndexOutOfRange("strand has no entry for p = " + std::to_string(p));
}

bool StrandResult::vanishing_propagates() const {
  bool seen_zero = false;
  for (const auto& e : entries) {
    if (seen_zero && e.dim != 0) return false;
    if (e.dim == 0) seen_zero = true;
  }
  return true;
}

bool StrandResult::all_compositions_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const StrandEntry& e) { return e.composition_zero; });
}

}  // namespace syzlab
