#include "vbg/subspace.hpp"

namespace vbg {

Subspace Subspace::span(const Matrix& generators) {
  return Subspace(generators.rows(), image(generators));
}

Subspace Subspace::full(std::size_t ambient) {
  return Subspace(ambient, Matrix::identity(ambient));
}

bool Subspace::contains(const Matrix& vectors) const {
  if (vectors.rows() != ambient_) throw DimensionError("ambient mismatch");
  return solve_linear(basis_, vectors).has_value();
}

Matrix Subspace::coordinates(const Matrix& vectors) const {
  if (vectors.rows() != ambient_) throw DimensionError("ambient mismatch");
  auto x = solve_linear(basis_, vectors);
  if (!x) throw std::invalid_argument("vector not in subspace");
  return std::move(*x);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.dim() == b.dim() && a.contains(b.basis_);
}

Subspace kernel_space(const Matrix& m) { return Subspace::span(kernel(m)); }

Subspace image_space(const Matrix& m) { return Subspace::span(m); }

Subspace intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch");
  const Matrix k = kernel(hstack(a.basis(), -b.basis()));
  return Subspace::span(a.basis() * k.row_range(0, a.dim()));
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch");
  return Subspace::span(hstack(a.basis(), b.basis()));
}

Subspace complement(const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  const auto pivots = rref(s.basis().transpose()).pivots;
  std::vector<bool> taken(n, false);
  for (auto p : pivots) taken[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  return Subspace::span(Matrix::identity(n).cols_at(rest));
}

Matrix quotient_reps(const Subspace& part, const Subspace& whole) {
  if (part.ambient_dim() != whole.ambient_dim()) {
    throw DimensionError("ambient mismatch");
  }
  if (!whole.contains(part.basis())) {
    throw std::invalid_argument("quotient_reps: part is not contained in whole");
  }
  const auto pivots = rref(hstack(part.basis(), whole.basis())).pivots;
  std::vector<std::size_t> chosen;
  for (auto p : pivots) {
    if (p >= part.dim()) chosen.push_back(p - part.dim());
  }
  return whole.basis().cols_at(chosen);
}

Subspace subspace_calc(SubspaceMode mode, const std::vector<SubspaceArg>& args) {
  auto as_space = [](const SubspaceArg& a) {
    if (const auto* m = std::get_if<Matrix>(&a)) return Subspace::span(*m);
    return std::get<Subspace>(a);
  };
  auto need = [&](std::size_t n) {
    if (args.size() != n) throw std::invalid_argument("subspace_calc: wrong arity");
  };
  switch (mode) {
    case SubspaceMode::kernel:
      need(1);
      return kernel_space(std::get<Matrix>(args[0]));
    case SubspaceMode::image:
      need(1);
      return image_space(std::get<Matrix>(args[0]));
    case SubspaceMode::intersection:
      need(2);
      return intersection(as_space(args[0]), as_space(args[1]));
    case SubspaceMode::sum:
      need(2);
      return sum(as_space(args[0]), as_space(args[1]));
    case SubspaceMode::complement:
      need(1);
      return complement(as_space(args[0]));
    case SubspaceMode::quotient_reps: {
      need(2);
      return Subspace::span(quotient_reps(as_space(args[0]), as_space(args[1])));
    }
  }
  throw std::invalid_argument("subspace_calc: unknown mode");
}

}  // namespace vbg
