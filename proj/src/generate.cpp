#include "vbg/generate.hpp"

#include <algorithm>

namespace vbg {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int range) {
  std::uniform_int_distribution<int> pick(-range, 2 * range);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const int v = pick(rng);
      m(i, j) = v > range ? 0 : v;
    }
  }
  return m;
}

Matrix random_invertible(Rng& rng, std::size_t n) {
  static const int diag[] = {1, -1, 2, -2};
  Matrix l = random_matrix(rng, n, n, 1);
  Matrix u = random_matrix(rng, n, n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j > i) l(i, j) = 0;
      if (j < i) u(i, j) = 0;
    }
    l(i, i) = diag[rng() % 4];
    u(i, i) = 1;
  }
  return l * u;
}

TwoTermRuth honest_rep(const FiniteGroupoid& g, const std::vector<int>& trivial,
                       const std::vector<int>& regular) {
  const OrbitData od = orbits_and_isotropy(g);
  if (trivial.size() != od.orbits.size() || regular.size() != od.orbits.size()) {
    throw InvalidInput("one multiplicity per orbit is required");
  }
  const int n = g.num_objects();
  std::vector<std::size_t> dims(n);
  // transport[y] : root(y) -> y
  std::vector<ArrowId> transport(n, kNone);
  for (std::size_t o = 0; o < od.orbits.size(); ++o) {
    const ObjectId root = od.orbits[o].front();
    const std::size_t order = od.isotropy[root].size();
    for (auto y : od.orbits[o]) {
      transport[y] = g.hom(y, root).front();
      dims[y] = trivial[o] + regular[o] * order;
    }
  }
  auto r = TwoTermRuth::zeros(g, dims, std::vector<std::size_t>(n, 0));
  for (int a = 0; a < g.num_arrows(); ++a) {
    const ObjectId s = g.source(a), t = g.target(a);
    const int o = od.orbit_of[s];
    const auto& iso = od.isotropy[od.orbits[o].front()];
    const ArrowId h = g.compose(g.inverse(transport[t]), g.compose(a, transport[s]));
    Matrix rho = Matrix::zero(dims[t], dims[s]);
    for (int k = 0; k < trivial[o]; ++k) rho(k, k) = 1;
    for (int c = 0; c < regular[o]; ++c) {
      const std::size_t off = trivial[o] + c * iso.size();
      for (std::size_t k = 0; k < iso.size(); ++k) {
        const ArrowId hk = g.compose(h, iso[k]);
        const auto pos = std::find(iso.begin(), iso.end(), hk) - iso.begin();
        rho(off + pos, off + k) = 1;
      }
    }
    r.rhoE[a] = std::move(rho);
  }
  return r;
}

TwoTermRuth shift_to_core(const TwoTermRuth& honest) {
  const auto& g = *honest.base;
  auto r = TwoTermRuth::zeros(g, std::vector<std::size_t>(g.num_objects(), 0), honest.dimE);
  r.rhoC = honest.rhoE;
  return r;
}

std::vector<Matrix> random_mu(Rng& rng, const TwoTermRuth& r) {
  const auto& g = *r.base;
  std::vector<Matrix> mu;
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto rows = r.dimC[g.target(a)], cols = r.dimE[g.source(a)];
    mu.push_back(g.is_unit(a) ? Matrix::zero(rows, cols) : random_matrix(rng, rows, cols, 1));
  }
  return mu;
}

GaugeResult random_gauge(Rng& rng, const TwoTermRuth& r) {
  std::vector<Matrix> pe, pc;
  for (int x = 0; x < r.base->num_objects(); ++x) {
    pe.push_back(random_invertible(rng, r.dimE[x]));
    pc.push_back(random_invertible(rng, r.dimC[x]));
  }
  return gauge_transform(r, pe, pc, random_mu(rng, r));
}

TwoTermRuth random_ruth(Rng& rng, const FiniteGroupoid& g, const RuthShape& shape) {
  const auto norbits = orbits_and_isotropy(g).orbits.size();
  auto draw = [&](int max) {
    std::vector<int> v(norbits);
    for (auto& k : v) k = max > 0 ? static_cast<int>(rng() % (max + 1)) : 0;
    return v;
  };
  auto zeros = std::vector<int>(norbits, 0);
  TwoTermRuth r = honest_rep(g, draw(shape.max_trivial), draw(shape.max_regular));
  r = direct_sum(r, shift_to_core(honest_rep(g, draw(shape.max_trivial), zeros)));
  const int acyclic = shape.max_acyclic > 0 ? static_cast<int>(rng() % (shape.max_acyclic + 1)) : 0;
  for (int k = 0; k < acyclic; ++k) {
    TwoTermRuth a = honest_rep(g, std::vector<int>(norbits, 1), zeros);
    TwoTermRuth c = shift_to_core(a);
    for (int x = 0; x < g.num_objects(); ++x) c.dimE[x] = a.dimE[x];
    c.rhoE = a.rhoE;
    c.gamma_table = TwoTermRuth::zeros(g, a.dimE, a.dimE).gamma_table;
    for (int x = 0; x < g.num_objects(); ++x) c.anchor[x] = Matrix::identity(a.dimE[x]);
    r = direct_sum(r, c);
  }
  if (!shape.gauge) return r;
  return std::move(*random_gauge(rng, r).ruth);
}

}  // namespace vbg
