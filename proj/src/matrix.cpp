#include "syzlab/matrix.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "syzlab/errors.hpp"
#include "syzlab/parallel.hpp"

namespace syzlab {

namespace {

bool wants_dense(std::size_t nnz, std::size_t rows, std::size_t cols) {
  const double cells = static_cast<double>(rows) * static_cast<double>(cols);
  return cells > 0 && static_cast<double>(nnz) > ExactMatrix::kDenseThreshold * cells;
}

bool row_major_less(const Triplet& a, const Triplet& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExactMatrix

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), storage_(Storage::Sparse) {}

ExactMatrix ExactMatrix::identity(std::size_t n, PrimeField field) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1});
  return from_triplets(n, n, field, std::move(t));
}

ExactMatrix ExactMatrix::from_triplets(std::size_t rows, std::size_t cols, PrimeField field,
                                       std::vector<Triplet> entries,
                                       std::optional<Storage> storage) {
  for (const auto& e : entries)
    if (e.row >= rows || e.col >= cols)
      throw BadIndex("triplet (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                     ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
  std::sort(entries.begin(), entries.end(), row_major_less);
  std::vector<Triplet> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    const Residue v = e.value % field.modulus();
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value = field.add(merged.back().value, v);
    else
      merged.push_back({e.row, e.col, v});
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0; });

  ExactMatrix m(rows, cols, field);
  const Storage chosen =
      storage.value_or(wants_dense(merged.size(), rows, cols) ? Storage::Dense : Storage::Sparse);
  if (chosen == Storage::Dense) {
    m.storage_ = Storage::Dense;
    m.dense_.assign(rows * cols, 0);
    for (const auto& t : merged) m.dense_[t.row * cols + t.col] = t.value;
  } else {
    m.sparse_ = std::move(merged);
  }
  return m;
}

ExactMatrix ExactMatrix::from_dense(std::size_t rows, std::size_t cols, PrimeField field,
                                    Vector data, std::optional<Storage> storage) {
  if (data.size() != rows * cols) throw BadIndex("dense data size does not match shape");
  for (auto& x : data) x %= field.modulus();
  const std::size_t nz =
      static_cast<std::size_t>(std::count_if(data.begin(), data.end(), [](Residue x) { return x != 0; }));
  ExactMatrix m(rows, cols, field);
  const Storage chosen = storage.value_or(wants_dense(nz, rows, cols) ? Storage::Dense : Storage::Sparse);
  if (chosen == Storage::Dense) {
    m.storage_ = Storage::Dense;
    m.dense_ = std::move(data);
  } else {
    m.sparse_.reserve(nz);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (data[i * cols + j]) m.sparse_.push_back({i, j, data[i * cols + j]});
  }
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols,
                                   PrimeField field) {
  Vector data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw BadIndex("from_rows: row length mismatch");
    data.insert(data.end(), r.begin(), r.end());
  }
  return from_dense(rows.size(), cols, field, std::move(data));
}

std::size_t ExactMatrix::nnz() const noexcept {
  if (storage_ == Storage::Sparse) return sparse_.size();
  return static_cast<std::size_t>(
      std::count_if(dense_.begin(), dense_.end(), [](Residue x) { return x != 0; }));
}

double ExactMatrix::density() const noexcept {
  const double cells = static_cast<double>(rows_) * static_cast<double>(cols_);
  return cells == 0 ? 0.0 : static_cast<double>(nnz()) / cells;
}

Residue ExactMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw BadIndex("matrix index out of range");
  if (storage_ == Storage::Dense) return dense_[i * cols_ + j];
  const Triplet key{i, j, 0};
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), key, row_major_less);
  return (it != sparse_.end() && it->row == i && it->col == j) ? it->value : 0;
}

Vector ExactMatrix::dense_data() const {
  if (storage_ == Storage::Dense) return dense_;
  Vector d(rows_ * cols_, 0);
  for (const auto& t : sparse_) d[t.row * cols_ + t.col] = t.value;
  return d;
}

std::vector<Triplet> ExactMatrix::triplets() const {
  if (storage_ == Storage::Sparse) return sparse_;
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (dense_[i * cols_ + j]) t.push_back({i, j, dense_[i * cols_ + j]});
  return t;
}

ExactMatrix ExactMatrix::to_dense() const {
  return from_dense(rows_, cols_, field_, dense_data(), Storage::Dense);
}

ExactMatrix ExactMatrix::to_sparse() const {
  return from_triplets(rows_, cols_, field_, triplets(), Storage::Sparse);
}

ExactMatrix ExactMatrix::transpose() const {
  std::vector<Triplet> t = triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, field_, std::move(t), storage_);
}

Vector ExactMatrix::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw BadIndex("apply: vector length mismatch");
  Vector out(rows_, 0);
  if (storage_ == Storage::Dense) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Residue acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = field_.mul_add(acc, dense_[i * cols_ + j], v[j]);
      out[i] = acc;
    }
  } else {
    for (const auto& t : sparse_) out[t.row] = field_.mul_add(out[t.row], t.value, v[t.col]);
  }
  return out;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw BadIndex("multiply: inner dimensions differ");
  if (!(a.field_ == b.field_)) throw Error("multiply: different fields");
  const PrimeField& F = a.field_;
  const auto bt = b.triplets();
  std::vector<std::size_t> row_start(b.rows_ + 1, 0);
  for (const auto& t : bt) ++row_start[t.row + 1];
  std::partial_sum(row_start.begin(), row_start.end(), row_start.begin());

  std::vector<Triplet> out;
  Vector acc(b.cols_, 0);
  std::vector<std::size_t> touched;
  std::vector<char> mark(b.cols_, 0);
  const auto at = a.triplets();
  std::size_t k = 0;
  while (k < at.size()) {
    const std::size_t row = at[k].row;
    for (; k < at.size() && at[k].row == row; ++k) {
      const std::size_t mid = at[k].col;
      for (std::size_t q = row_start[mid]; q < row_start[mid + 1]; ++q) {
        const std::size_t col = bt[q].col;
        acc[col] = F.mul_add(acc[col], at[k].value, bt[q].value);
        if (!mark[col]) {
          mark[col] = 1;
          touched.push_back(col);
        }
      }
    }
    for (std::size_t col : touched) {
      if (acc[col]) out.push_back({row, col, acc[col]});
      acc[col] = 0;
      mark[col] = 0;
    }
    touched.clear();
  }
  return ExactMatrix::from_triplets(a.rows_, b.cols_, F, std::move(out));
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ &&
         a.triplets() == b.triplets();
}

// ---------------------------------------------------------------------------
// Rank

namespace {

// Row echelon elimination on a row-major buffer; returns the rank.
std::size_t dense_rank_inplace(Vector& a, std::size_t rows, std::size_t cols,
                               const PrimeField& F, unsigned threads) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols + c),
                       a.begin() + static_cast<std::ptrdiff_t>(piv * cols + cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols + c));
    const Residue inv = F.inv(a[r * cols + c]);
    Residue* prow = a.data() + r * cols;
    for (std::size_t j = c; j < cols; ++j) prow[j] = F.mul(prow[j], inv);
    const std::span<const Residue> tail(prow + c + 1, cols - c - 1);
    const std::size_t work = (rows - r - 1) * (cols - c);
    const unsigned t = work > (1u << 16) ? threads : 1u;
    parallel_for(r + 1, rows, t, [&](std::size_t i) {
      Residue* row = a.data() + i * cols;
      const Residue f = row[c];
      if (f == 0) return;
      row[c] = 0;
      F.axpy(std::span<Residue>(row + c + 1, cols - c - 1), F.neg(f), tail);
    });
    ++r;
  }
  return r;
}

using SparseRow = std::vector<std::pair<std::uint32_t, Residue>>;

std::size_t sparse_rank(const ExactMatrix& m, const RankOptions& options) {
  const PrimeField& F = m.field();
  const std::size_t R = m.rows(), C = m.cols();
  const auto entries = m.triplets();

  // Static Markowitz-style ordering: sparse columns first, short rows first.
  std::vector<std::size_t> col_count(C, 0), row_count(R, 0);
  for (const auto& t : entries) {
    ++col_count[t.col];
    ++row_count[t.row];
  }
  std::vector<std::uint32_t> col_order(C);
  std::iota(col_order.begin(), col_order.end(), 0u);
  std::stable_sort(col_order.begin(), col_order.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return col_count[x] < col_count[y]; });
  std::vector<std::uint32_t> new_col(C);
  for (std::uint32_t i = 0; i < C; ++i) new_col[col_order[i]] = i;

  std::vector<SparseRow> rows(R);
  for (const auto& t : entries)
    rows[t.row].emplace_back(new_col[t.col], t.value);
  for (auto& row : rows) std::sort(row.begin(), row.end());
  std::vector<std::size_t> row_order(R);
  std::iota(row_order.begin(), row_order.end(), std::size_t{0});
  std::stable_sort(row_order.begin(), row_order.end(),
                   [&](std::size_t x, std::size_t y) { return row_count[x] < row_count[y]; });

  std::vector<long> pivot_of(C, -1);
  std::vector<SparseRow> pivots;
  std::size_t pivot_nnz = 0;
  Vector acc(C, 0);
  const std::size_t max_rank = std::min(R, C);

  for (std::size_t idx = 0; idx < R && pivots.size() < max_rank; ++idx) {
    const SparseRow& src = rows[row_order[idx]];
    if (src.empty()) continue;
    for (const auto& [c, v] : src) acc[c] = v;
    for (std::size_t c = src.front().first; c < C; ++c) {
      const Residue f = acc[c];
      if (f == 0) continue;
      if (pivot_of[c] >= 0) {
        const Residue nf = F.neg(f);
        for (const auto& [pc, pv] : pivots[static_cast<std::size_t>(pivot_of[c])])
          acc[pc] = F.mul_add(acc[pc], nf, pv);
        continue;
      }
      const Residue inv = F.inv(f);
      SparseRow fresh;
      for (std::size_t j = c; j < C; ++j) {
        if (acc[j]) fresh.emplace_back(static_cast<std::uint32_t>(j), F.mul(acc[j], inv));
        acc[j] = 0;
      }
      pivot_nnz += fresh.size();
      pivot_of[c] = static_cast<long>(pivots.size());
      pivots.push_back(std::move(fresh));
      break;
    }

    const std::size_t rank_so_far = pivots.size();
    const bool filled = rank_so_far >= 16 &&
                        static_cast<double>(pivot_nnz) >
                            options.dense_switch * static_cast<double>(rank_so_far) * static_cast<double>(C);
    if (filled && idx + 1 < R) {
      // Hand the remainder (current pivots plus unprocessed rows) to the dense kernel.
      const std::size_t left = R - idx - 1;
      const std::size_t dr = rank_so_far + left;
      Vector dense(dr * C, 0);
      std::size_t out = 0;
      for (const auto& p : pivots) {
        for (const auto& [c, v] : p) dense[out * C + c] = v;
        ++out;
      }
      for (std::size_t j = idx + 1; j < R; ++j, ++out)
        for (const auto& [c, v] : rows[row_order[j]]) dense[out * C + c] = v;
      return dense_rank_inplace(dense, dr, C, F, options.threads);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank(const ExactMatrix& m, const RankOptions& options) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  RankPath path = options.path;
  if (path == RankPath::Auto)
    path = m.storage() == ExactMatrix::Storage::Dense ? RankPath::Dense : RankPath::Sparse;
  if (path == RankPath::Sparse) return sparse_rank(m, options);
  Vector data = m.dense_data();
  return dense_rank_inplace(data, m.rows(), m.cols(), m.field(), options.threads);
}

// ---------------------------------------------------------------------------
// rref / kernel / quotient

namespace {

RowEchelon rref_rows(std::vector<Vector> rows, std::size_t cols, const PrimeField& F) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const Residue inv = F.inv(rows[r][c]);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = F.mul(rows[r][j], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Residue nf = F.neg(rows[i][c]);
      F.axpy(std::span<Residue>(rows[i]).subspan(c), nf,
             std::span<const Residue>(rows[r]).subspan(c));
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

// v minus its components along the pivots of a reduced echelon basis.
void reduce_against(Vector& v, const RowEchelon& e, const PrimeField& F) {
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const Residue f = v[e.pivots[i]];
    if (f) F.axpy(v, F.neg(f), e.rows[i]);
  }
}

}  // namespace

RowEchelon rref(const ExactMatrix& m) {
  std::vector<Vector> rows(m.rows(), Vector(m.cols(), 0));
  for (const auto& t : m.triplets()) rows[t.row][t.col] = t.value;
  return rref_rows(std::move(rows), m.cols(), m.field());
}

std::vector<Vector> kernel_basis(const ExactMatrix& m) {
  const PrimeField& F = m.field();
  const RowEchelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : e.pivots) is_pivot[c] = 1;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = F.neg(e.rows[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

QuotientSpace::QuotientSpace(const std::vector<Vector>& ambient_basis,
                             const std::vector<Vector>& subspace_basis, std::size_t n,
                             PrimeField field)
    : field_(field), n_(n) {
  for (const auto& v : ambient_basis)
    if (v.size() != n) throw BadIndex("QuotientSpace: ambient vector length mismatch");
  for (const auto& v : subspace_basis)
    if (v.size() != n) throw BadIndex("QuotientSpace: subspace vector length mismatch");

  const RowEchelon ambient = rref_rows(ambient_basis, n, field_);
  ambient_dim_ = ambient.rank();
  for (const auto& s : subspace_basis) {
    Vector w = s;
    reduce_against(w, ambient, field_);
    if (std::any_of(w.begin(), w.end(), [](Residue x) { return x != 0; }))
      throw NotASubspace("subspace vector outside the ambient span");
  }
  sub_ = rref_rows(subspace_basis, n, field_);

  std::vector<Vector> reduced;
  reduced.reserve(ambient_basis.size());
  for (const auto& a : ambient_basis) reduced.push_back(reduce_mod_subspace(a));
  complement_ = rref_rows(std::move(reduced), n, field_);

  table_.reserve(ambient_basis.size());
  for (const auto& a : ambient_basis) table_.push_back(coordinates(a));
}

Vector QuotientSpace::reduce_mod_subspace(std::span<const Residue> v) const {
  Vector w(v.begin(), v.end());
  reduce_against(w, sub_, field_);
  return w;
}

Vector QuotientSpace::coordinates(std::span<const Residue> v) const {
  if (v.size() != n_) throw BadIndex("QuotientSpace: vector length mismatch");
  Vector w = reduce_mod_subspace(v);
  Vector coords(complement_.rank(), 0);
  for (std::size_t i = 0; i < complement_.rank(); ++i) coords[i] = w[complement_.pivots[i]];
  reduce_against(w, complement_, field_);
  if (std::any_of(w.begin(), w.end(), [](Residue x) { return x != 0; }))
    throw NotASubspace("vector outside the ambient space of the quotient");
  return coords;
}

QuotientDims quotient_dims(const std::vector<Vector>& ambient_basis,
                           const std::vector<Vector>& subspace_basis, std::size_t n,
                           PrimeField field) {
  QuotientSpace q(ambient_basis, subspace_basis, n, field);
  return {q.dimension(), q.projection_table()};
}

// ---------------------------------------------------------------------------
// MatrixMarket

void write_matrix_market(std::ostream& out, const ExactMatrix& m) {
  const auto t = m.triplets();
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << "% entries are residues modulo " << m.field().modulus() << "\n";
  out << m.rows() << ' ' << m.cols() << ' ' << t.size() << '\n';
  for (const auto& e : t) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
}

ExactMatrix read_matrix_market(std::istream& in, PrimeField field) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate", 0) != 0)
    throw Error("MatrixMarket: missing coordinate header");
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
  }
  std::istringstream dims(line);
  std::size_t rows = 0, cols = 0, count = 0;
  if (!(dims >> rows >> cols >> count)) throw Error("MatrixMarket: bad size line");
  std::vector<Triplet> t;
  t.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t i = 0, j = 0;
    long long v = 0;
    if (!(in >> i >> j >> v) || i == 0 || j == 0) throw Error("MatrixMarket: bad entry");
    t.push_back({i - 1, j - 1, field.from_int(v)});
  }
  return ExactMatrix::from_triplets(rows, cols, field, std::move(t));
}

}  // namespace syzlab
