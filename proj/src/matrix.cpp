#include "vbg/matrix.hpp"

#include <sstream>
#include <utility>

namespace vbg {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::scalar(std::size_t n, const Rational& s) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

Matrix Matrix::column(const std::vector<Rational>& entries) {
  Matrix m(entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!vbg::is_zero(x)) return false;
  }
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::col(std::size_t c) const { return col_range(c, c + 1); }

Matrix Matrix::cols_at(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
  }
  return m;
}

Matrix Matrix::col_range(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= cols_, "column range out of bounds");
  Matrix m(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
  }
  return m;
}

Matrix Matrix::row_range(std::size_t begin, std::size_t end) const {
  require(begin <= end && end <= rows_, "row range out of bounds");
  Matrix m(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
  }
  return m;
}

std::vector<Rational> Matrix::col_vector(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_block(std::size_t r, std::size_t c, const Matrix& block) {
  require(r + block.rows_ <= rows_ && c + block.cols_ <= cols_,
          "block does not fit");
  for (std::size_t i = 0; i < block.rows_; ++i) {
    for (std::size_t j = 0; j < block.cols_; ++j) {
      (*this)(r + i, c + j) = block(i, j);
    }
  }
}

void Matrix::add_block(std::size_t r, std::size_t c, const Matrix& block,
                       const Rational& scale) {
  require(r + block.rows_ <= rows_ && c + block.cols_ <= cols_,
          "block does not fit");
  for (std::size_t i = 0; i < block.rows_; ++i) {
    for (std::size_t j = 0; j < block.cols_; ++j) {
      const auto& x = block(i, j);
      if (!vbg::is_zero(x)) (*this)(r + i, c + j) += scale * x;
    }
  }
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_,
          "matrix difference shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("matrix product shape mismatch: " +
                         std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                         " * " + std::to_string(b.rows_) + "x" +
                         std::to_string(b.cols_));
  }
  Matrix p(a.rows_, b.cols_);
  Rational t;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (vbg::is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (vbg::is_zero(bkj)) continue;
        t = aik * bkj;
        p(i, j) += t;
      }
    }
  }
  return p;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) {
      os << (c ? "," : "") << vbg::to_string((*this)(r, c));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require(b.rows() == rows, "hstack row mismatch");
    cols += b.cols();
  }
  Matrix m(rows, cols);
  std::size_t c = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c, b);
    c += b.cols();
  }
  return m;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  return hstack({a, b}, a.rows());
}

Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require(b.cols() == cols, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix m(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    m.set_block(r, 0, b);
    r += b.rows();
  }
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  return vstack({a, b}, a.cols());
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix m(rows, cols);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix block_diag(const Matrix& a, const Matrix& b) { return block_diag({a, b}); }

RrefResult rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Rational factor;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!is_zero(m(r, j))) m(i, j) -= factor * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel(const Matrix& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  Matrix k(m.cols(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    k(free[j], j) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      k(pivots[i], j) = -red(i, free[j]);
    }
  }
  return k;
}

Matrix image(const Matrix& m) { return m.cols_at(rref(m).pivots); }

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows(), "solve_linear: rhs length mismatch");
  const std::size_t n = a.cols();
  const auto [red, pivots] = rref(hstack(a, b));
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = red(i, n + j);
  }
  return x;
}

std::optional<std::vector<Rational>> solve_linear(const Matrix& a,
                                                  const std::vector<Rational>& b) {
  auto x = solve_linear(a, Matrix::column(b));
  if (!x) return std::nullopt;
  return x->col_vector(0);
}

Matrix solve_or_throw(const Matrix& a, const Matrix& b, const char* what) {
  auto x = solve_linear(a, b);
  if (!x) throw std::runtime_error(std::string("inconsistent system: ") + what);
  return std::move(*x);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_linear(m, Matrix::identity(m.rows()));
}

bool is_invertible(const Matrix& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

std::optional<Matrix> right_inverse(const Matrix& m) {
  if (rank(m) != m.rows()) return std::nullopt;
  return solve_linear(m, Matrix::identity(m.rows()));
}

}  // namespace vbg
