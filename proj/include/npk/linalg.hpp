#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "npk/rational.hpp"

namespace npk {

using RationalVector = std::vector<Rational>;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
  }
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("ragged matrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }
  static RationalMatrix from_rows(int cols, const std::vector<RationalVector>& rows) {
    RationalMatrix m(static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("ragged matrix");
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  RationalVector row(int i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
            data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_};
  }
  std::vector<RationalVector> row_list() const {
    std::vector<RationalVector> out;
    for (int i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  RationalMatrix transposed() const {
    RationalMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

struct EchelonForm {
  std::vector<RationalVector> rows;  // nonzero rows only
  std::vector<int> pivots;           // pivot column of each row
};

// Reduced row echelon form by plain rational Gauss-Jordan elimination.
inline EchelonForm reduced_row_echelon(std::vector<RationalVector> rows, int cols) {
  EchelonForm out;
  int r = 0;
  const int nrows = static_cast<int>(rows.size());
  for (int c = 0; c < cols && r < nrows; ++c) {
    int pivot = -1;
    for (int i = r; i < nrows; ++i)
      if (!is_zero(rows[i][c])) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    Rational inv = 1 / rows[r][c];
    for (int j = c; j < cols; ++j) rows[r][j] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || is_zero(rows[i][c])) continue;
      Rational f = rows[i][c];
      for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  rows.resize(static_cast<std::size_t>(r));
  out.rows = std::move(rows);
  return out;
}

// Linear subspace of Q^ambient_dim held as its reduced-row-echelon basis, so
// equal subspaces compare equal structurally.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient_dim) : ambient_(ambient_dim) {}

  static Subspace span(int ambient_dim, std::vector<RationalVector> vectors) {
    for (const auto& v : vectors)
      if (static_cast<int>(v.size()) != ambient_dim)
        throw std::invalid_argument("vector length does not match ambient dimension");
    Subspace s(ambient_dim);
    auto ech = reduced_row_echelon(std::move(vectors), ambient_dim);
    s.basis_ = std::move(ech.rows);
    s.pivots_ = std::move(ech.pivots);
    return s;
  }
  static Subspace zero(int ambient_dim) { return Subspace(ambient_dim); }
  static Subspace full(int ambient_dim) {
    std::vector<RationalVector> id(ambient_dim, RationalVector(ambient_dim, Rational(0)));
    for (int i = 0; i < ambient_dim; ++i) id[i][i] = 1;
    return span(ambient_dim, std::move(id));
  }

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RationalVector>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  int ambient_ = 0;
  std::vector<RationalVector> basis_;
  std::vector<int> pivots_;
};

// Null space of the matrix whose rows are `rows` (vectors x with row . x = 0).
inline Subspace null_space(const std::vector<RationalVector>& rows, int cols) {
  auto ech = reduced_row_echelon(rows, cols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int p : ech.pivots) is_pivot[p] = true;
  std::vector<RationalVector> kernel;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(static_cast<std::size_t>(cols), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][f];
    kernel.push_back(std::move(v));
  }
  return Subspace::span(cols, std::move(kernel));
}

struct RankKernelImage {
  int rank = 0;
  Subspace kernel;  // in Q^cols
  Subspace image;   // in Q^rows, spanned by the columns
};

inline RankKernelImage rank_kernel_image(const RationalMatrix& m) {
  RankKernelImage out;
  out.kernel = null_space(m.row_list(), m.cols());
  out.image = Subspace::span(m.rows(), m.transposed().row_list());
  out.rank = out.image.dim();
  return out;
}

// Vectors of the dual space vanishing on U (same coordinates, caller tracks variance).
inline Subspace annihilator(const Subspace& u) { return null_space(u.basis(), u.ambient_dim()); }

inline Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  auto rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.ambient_dim(), std::move(rows));
}

// U n V = Ann(Ann(U) + Ann(V)).
inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  return annihilator(sum(annihilator(u), annihilator(v)));
}

inline bool contains(const Subspace& u, const RationalVector& v) {
  if (static_cast<int>(v.size()) != u.ambient_dim())
    throw std::invalid_argument("vector length does not match ambient dimension");
  RationalVector r = v;
  for (std::size_t i = 0; i < u.basis().size(); ++i) {
    int p = u.pivots()[i];
    if (is_zero(r[p])) continue;
    Rational f = r[p];
    for (int j = 0; j < u.ambient_dim(); ++j) r[j] -= f * u.basis()[i][j];
  }
  for (const auto& x : r)
    if (!is_zero(x)) return false;
  return true;
}

inline bool is_subspace_of(const Subspace& u, const Subspace& v) {
  for (const auto& b : u.basis())
    if (!contains(v, b)) return false;
  return true;
}

}  // namespace npk
