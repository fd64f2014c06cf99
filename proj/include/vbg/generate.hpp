#pragma once

#include <random>

#include "vbg/ruth.hpp"

namespace vbg {

using Rng = std::mt19937_64;

/// Entries uniform in [-range, range], with extra weight on zero.
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range = 2);
/// L*U with unit-free diagonals drawn from {±1, ±2}; always invertible.
Matrix random_invertible(Rng& rng, std::size_t n);

struct RuthShape {
  int max_trivial = 1;  // copies of the trivial isotropy representation, per side
  int max_regular = 1;  // copies of the regular isotropy representation on E
  int max_acyclic = 1;  // copies of id : Q -> Q
  bool gauge = true;
};

/// Honest representation: per orbit, `trivial` trivial plus `regular` regular
/// copies of the root isotropy group, transported along fixed arrows.
TwoTermRuth honest_rep(const FiniteGroupoid& g, const std::vector<int>& trivial,
                       const std::vector<int>& regular);
/// Places an honest representation on the C side (E = 0).
TwoTermRuth shift_to_core(const TwoTermRuth& honest);

/// Random μ vanishing at units.
std::vector<Matrix> random_mu(Rng& rng, const TwoTermRuth& r);
/// A random gauge transformation of r.
GaugeResult random_gauge(Rng& rng, const TwoTermRuth& r);

/// Gauge-orbit sample of honest ⊕ shifted honest ⊕ acyclic seeds.
TwoTermRuth random_ruth(Rng& rng, const FiniteGroupoid& g, const RuthShape& shape = {});

}  // namespace vbg
