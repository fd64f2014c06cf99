#include <gtest/gtest.h>

#include <random>

#include "vbg/cochain.hpp"
#include "vbg/subspace.hpp"

namespace vbg {
namespace {

Rational q(const char* s) { return parse_rational(s); }

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range = 3,
                     int zero_bias = 2) {
  std::uniform_int_distribution<int> pick(-range, range + zero_bias);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const int v = pick(rng);
      m(i, j) = v > range ? 0 : v;
    }
  }
  return m;
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(q("2/4")), "1/2");
  EXPECT_EQ(to_string(q("-6/3")), "-2");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
}

TEST(Rref, Identity) {
  auto r = rref(Matrix::identity(3));
  EXPECT_TRUE(r.reduced.is_identity());
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Rref, RankOne) {
  auto r = rref(Matrix{{1, 2}, {2, 4}});
  EXPECT_EQ(r.reduced, (Matrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, Fractions) {
  auto r = rref(Matrix{{q("1/2"), q("1/3")}, {q("1/4"), q("1/6")}});
  EXPECT_EQ(r.reduced, (Matrix{{1, q("2/3")}, {0, 0}}));
}

TEST(Subspace, IntersectionOfLines) {
  auto a = Subspace::span(Matrix{{1}, {0}});
  auto b = Subspace::span(Matrix{{1}, {1}});
  EXPECT_EQ(intersection(a, b).dim(), 0u);
  EXPECT_EQ(sum(a, b).dim(), 2u);
}

TEST(Subspace, DispatcherMatchesDirectCalls) {
  Matrix m{{1, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(subspace_calc(SubspaceMode::kernel, {m}), kernel_space(m));
  EXPECT_EQ(subspace_calc(SubspaceMode::image, {m}).dim(), 2u);
  auto k = kernel_space(m);
  EXPECT_EQ(subspace_calc(SubspaceMode::complement, {k}).dim(), 2u);
  EXPECT_THROW(quotient_reps(Subspace::full(2), Subspace::span(Matrix{{1}, {0}})),
               std::invalid_argument);
}

TEST(Solve, Underdetermined) {
  auto x = solve_linear(Matrix{{1, 1}}, Matrix::column({2}));
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, Matrix::column({2, 0}));
}

TEST(Solve, Inconsistent) {
  EXPECT_FALSE(solve_linear(Matrix{{1}, {1}}, Matrix::column({1, 2})));
}

TEST(Solve, ShapeMismatchThrows) {
  EXPECT_THROW(solve_linear(Matrix{{1, 1}}, Matrix::column({1, 2})), DimensionError);
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), DimensionError);
}

TEST(Cohomology, TwoTermComplex) {
  CochainComplex c{0, {2, 1}, {Matrix{{1, 1}}}, false};
  auto h = complex_cohomology(c);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0].dim, 1u);
  EXPECT_EQ(h[1].dim, 0u);
}

TEST(Cohomology, RejectsNonComplex) {
  CochainComplex c{0, {1, 1, 1}, {Matrix{{1}}, Matrix{{1}}}, false};
  EXPECT_THROW(complex_cohomology(c), ComplexError);
}

TEST(QuasiIso, IdentityAndZero) {
  CochainComplex c{0, {2, 1}, {Matrix{{1, 1}}}, false};
  std::vector<Matrix> id{Matrix::identity(2), Matrix::identity(1)};
  EXPECT_TRUE(chain_map_is_quasi_iso(c, c, id).is_quasi_iso);
  std::vector<Matrix> zero{Matrix::zero(2, 2), Matrix::zero(1, 1)};
  EXPECT_FALSE(chain_map_is_quasi_iso(c, c, zero).is_quasi_iso);
  CochainComplex acyclic{0, {1, 1}, {Matrix{{1}}}, false};
  CochainComplex nothing{0, {0, 0}, {Matrix(0, 0)}, false};
  std::vector<Matrix> to_zero{Matrix(0, 1), Matrix(0, 1)};
  EXPECT_TRUE(chain_map_is_quasi_iso(acyclic, nothing, to_zero).is_quasi_iso);
}

TEST(QuasiIso, NotAChainMapThrows) {
  CochainComplex c{0, {1, 1}, {Matrix{{1}}}, false};
  std::vector<Matrix> f{Matrix{{1}}, Matrix{{2}}};
  EXPECT_THROW(chain_map_is_quasi_iso(c, c, f), ComplexError);
}

TEST(Property, RankNullity) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng() % 6, c = rng() % 6;
    Matrix m = random_matrix(rng, r, c);
    EXPECT_EQ(rank(m) + kernel(m).cols(), c);
    EXPECT_TRUE((m * kernel(m)).is_zero());
    EXPECT_EQ(image(m).cols(), rank(m));
  }
}

TEST(Property, ComplementSpansAmbient) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    auto s = Subspace::span(random_matrix(rng, n, rng() % 5));
    auto c = complement(s);
    EXPECT_EQ(s.dim() + c.dim(), n);
    EXPECT_EQ(rank(hstack(s.basis(), c.basis())), n);
  }
}

TEST(Property, SolveAgreesWithProduct) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix a = random_matrix(rng, r, c);
    Matrix x = random_matrix(rng, c, 1);
    auto sol = solve_linear(a, a * x);
    ASSERT_TRUE(sol);
    EXPECT_EQ(a * *sol, a * x);
    if (r == c) {
      auto inv = inverse(a);
      EXPECT_EQ(inv.has_value(), rank(a) == r);
      if (inv) EXPECT_TRUE((a * *inv).is_identity());
    }
  }
}

// d_{k+1} = A_{k+1} P_k with P_k the projection killing image(A_k): built so that
// consecutive compositions vanish.
CochainComplex random_complex(std::mt19937& rng, int first, std::size_t len) {
  CochainComplex c;
  c.first_degree = first;
  for (std::size_t k = 0; k < len; ++k) c.dims.push_back(rng() % 4);
  for (std::size_t k = 0; k + 1 < len; ++k) {
    Matrix d = random_matrix(rng, c.dims[k + 1], c.dims[k]);
    if (k > 0) {
      const Matrix& prev = c.differentials.back();
      Subspace im = image_space(prev);
      Subspace comp = complement(im);
      Matrix frame = hstack(im.basis(), comp.basis());
      Matrix inv = *inverse(frame);
      Matrix keep = Matrix::zero(frame.cols(), frame.cols());
      for (std::size_t i = im.dim(); i < frame.cols(); ++i) keep(i, i) = 1;
      d = d * frame * keep * inv;
    }
    c.differentials.push_back(d);
  }
  return c;
}

TEST(Property, EulerCharacteristic) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = random_complex(rng, -1, 2 + rng() % 4);
    validate_complex(c);
    long chi_dims = 0, chi_h = 0;
    for (int p = c.first_degree; p <= c.last_degree(); ++p) {
      chi_dims += ((p % 2 == 0) ? 1 : -1) * static_cast<long>(c.dim(p));
    }
    for (const auto& h : complex_cohomology(c)) {
      chi_h += ((h.degree % 2 == 0) ? 1 : -1) * static_cast<long>(h.dim);
    }
    EXPECT_EQ(chi_dims, chi_h);
  }
}

// Oracle: f is a quasi-isomorphism iff its mapping cone is acyclic.
bool cone_acyclic(const CochainComplex& a, const CochainComplex& b, const std::vector<Matrix>& f) {
  CochainComplex cone;
  cone.first_degree = a.first_degree - 1;
  const int lo = cone.first_degree, hi = a.last_degree();
  for (int p = lo; p <= hi; ++p) cone.dims.push_back(a.dim(p + 1) + b.dim(p));
  for (int p = lo; p < hi; ++p) {
    Matrix d(a.dim(p + 2) + b.dim(p + 1), a.dim(p + 1) + b.dim(p));
    d.set_block(0, 0, -a.d(p + 1));
    if (a.has_degree(p + 1)) d.set_block(a.dim(p + 2), 0, f[p + 1 - a.first_degree]);
    d.set_block(a.dim(p + 2), a.dim(p + 1), b.d(p));
    cone.differentials.push_back(d);
  }
  for (const auto& h : complex_cohomology(cone)) {
    if (h.dim != 0) return false;
  }
  return true;
}

TEST(Property, QuasiIsoMatchesConeOracle) {
  std::mt19937 rng(15);
  int positives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto a = random_complex(rng, 0, 3);
    // Chain maps: the identity, zero, and projections onto a summand.
    const int kind = static_cast<int>(rng() % 3);
    CochainComplex b = a;
    std::vector<Matrix> f;
    for (int p = 0; p <= a.last_degree(); ++p) {
      const std::size_t n = a.dim(p);
      f.push_back(kind == 0 ? Matrix::identity(n) : Matrix::zero(n, n));
    }
    if (kind == 2) {
      CochainComplex sum = a;
      for (std::size_t k = 0; k < sum.dims.size(); ++k) sum.dims[k] *= 2;
      for (std::size_t k = 0; k < sum.differentials.size(); ++k) {
        sum.differentials[k] = block_diag(a.differentials[k], a.differentials[k]);
      }
      f.clear();
      for (int p = 0; p <= a.last_degree(); ++p) {
        const std::size_t n = a.dim(p);
        f.push_back(hstack(Matrix::identity(n), Matrix::zero(n, n)));
      }
      const bool got = chain_map_is_quasi_iso(sum, a, f).is_quasi_iso;
      EXPECT_EQ(got, cone_acyclic(sum, a, f));
      positives += got;
      continue;
    }
    const bool got = chain_map_is_quasi_iso(a, b, f).is_quasi_iso;
    EXPECT_EQ(got, cone_acyclic(a, b, f));
    positives += got;
  }
  EXPECT_GT(positives, 0);
}

}  // namespace
}  // namespace vbg
