#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "vbg/rational.hpp"

namespace vbg {

/// Error raised when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of exact rationals. Vectors are single columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix identity(std::size_t n);
  static Matrix column(const std::vector<Rational>& entries);
  static Matrix scalar(std::size_t n, const Rational& s);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  const std::vector<Rational>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix transpose() const;
  Matrix col(std::size_t c) const;
  Matrix cols_at(const std::vector<std::size_t>& idx) const;
  Matrix col_range(std::size_t begin, std::size_t end) const;
  Matrix row_range(std::size_t begin, std::size_t end) const;
  std::vector<Rational> col_vector(std::size_t c) const;

  /// Writes `block` with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const Matrix& block);
  /// Adds `scale * block` with its top-left corner at (r, c).
  void add_block(std::size_t r, std::size_t c, const Matrix& block,
                 const Rational& scale = 1);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix hstack(const std::vector<Matrix>& blocks, std::size_t rows);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const std::vector<Matrix>& blocks, std::size_t cols);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const std::vector<Matrix>& blocks);
Matrix block_diag(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Exact reduced row-echelon form; pivots are column indices in order.
RrefResult rref(Matrix m);
std::size_t rank(const Matrix& m);

/// Null space basis (columns). Free variable f yields the vector with
/// x_f = 1, other free variables 0.
Matrix kernel(const Matrix& m);
/// Column space basis: the pivot columns of `m` itself.
Matrix image(const Matrix& m);

/// Some x with a*x = b, or nullopt. Free variables are set to zero.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);
std::optional<std::vector<Rational>> solve_linear(const Matrix& a,
                                                  const std::vector<Rational>& b);
/// Like solve_linear, but throws when inconsistent.
Matrix solve_or_throw(const Matrix& a, const Matrix& b, const char* what);

std::optional<Matrix> inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

/// Canonical right inverse of a full-row-rank matrix (columns are the
/// pivot-convention solutions of m*x = e_j). Nullopt if not surjective.
std::optional<Matrix> right_inverse(const Matrix& m);

}  // namespace vbg
