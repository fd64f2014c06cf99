#pragma once

#include <variant>
#include <vector>

#include "vbg/matrix.hpp"

namespace vbg {

/// A linear subspace of Q^ambient, held as a basis of independent columns.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(ambient, 0) {}
  /// Spans the columns of `generators`; dependent columns are dropped.
  static Subspace span(const Matrix& generators);
  static Subspace full(std::size_t ambient);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const Matrix& vectors) const;
  /// Coordinates of `vectors` (which must lie in the subspace) in the basis.
  Matrix coordinates(const Matrix& vectors) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient, Matrix basis)
      : ambient_(ambient), basis_(std::move(basis)) {}
  std::size_t ambient_;
  Matrix basis_;
};

Subspace kernel_space(const Matrix& m);
Subspace image_space(const Matrix& m);
Subspace intersection(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
/// Canonical complement: the standard basis vectors at the non-pivot
/// positions of rref(basis^T).
Subspace complement(const Subspace& s);
/// Vectors of `whole` extending a basis of `part` to a basis of `whole`,
/// chosen as the earliest basis columns of `whole` that are independent
/// of `part`. Requires part ⊆ whole.
Matrix quotient_reps(const Subspace& part, const Subspace& whole);

enum class SubspaceMode { kernel, image, intersection, sum, complement, quotient_reps };

using SubspaceArg = std::variant<Matrix, Subspace>;

/// Uniform dispatcher over the subspace calculus. Matrix arguments are read
/// as linear maps for kernel/image and as spanning sets otherwise.
Subspace subspace_calc(SubspaceMode mode, const std::vector<SubspaceArg>& args);

}  // namespace vbg
