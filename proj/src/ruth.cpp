#include "vbg/ruth.hpp"

namespace vbg {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

void require_shape(const Matrix& m, std::size_t r, std::size_t c, const std::string& what) {
  require(m.rows() == r && m.cols() == c,
          what + ": expected " + std::to_string(r) + "x" + std::to_string(c) + ", got " +
              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

TwoTermRuth TwoTermRuth::zeros(const FiniteGroupoid& g, std::vector<std::size_t> dimE,
                               std::vector<std::size_t> dimC) {
  const int n = g.num_objects();
  const int m = g.num_arrows();
  if (static_cast<int>(dimE.size()) != n || static_cast<int>(dimC.size()) != n) {
    throw DimensionError("rank vectors do not match the object count");
  }
  TwoTermRuth r;
  r.base = &g;
  r.dimE = std::move(dimE);
  r.dimC = std::move(dimC);
  for (int x = 0; x < n; ++x) r.anchor.push_back(Matrix::zero(r.dimE[x], r.dimC[x]));
  for (int a = 0; a < m; ++a) {
    const auto s = g.source(a), t = g.target(a);
    if (g.is_unit(a)) {
      r.rhoE.push_back(Matrix::identity(r.dimE[s]));
      r.rhoC.push_back(Matrix::identity(r.dimC[s]));
    } else {
      r.rhoE.push_back(Matrix::zero(r.dimE[t], r.dimE[s]));
      r.rhoC.push_back(Matrix::zero(r.dimC[t], r.dimC[s]));
    }
  }
  r.gamma_table.resize(static_cast<std::size_t>(m) * m);
  for (auto [a, b] : g.composable_pairs()) {
    r.gamma(a, b) = Matrix::zero(r.dimC[g.target(a)], r.dimE[g.source(b)]);
  }
  return r;
}

void check_ruth_shapes(const TwoTermRuth& r) {
  require(r.base != nullptr, "ruth has no base groupoid");
  const auto& g = *r.base;
  const auto n = static_cast<std::size_t>(g.num_objects());
  const auto m = static_cast<std::size_t>(g.num_arrows());
  require(r.dimE.size() == n && r.dimC.size() == n && r.anchor.size() == n,
          "per-object data does not match the object count");
  require(r.rhoE.size() == m && r.rhoC.size() == m, "per-arrow data does not match the arrow count");
  require(r.gamma_table.size() == m * m, "gamma table has the wrong size");
  for (std::size_t x = 0; x < n; ++x) {
    require_shape(r.anchor[x], r.dimE[x], r.dimC[x], "anchor at " + g.object_name(x));
  }
  for (std::size_t a = 0; a < m; ++a) {
    const auto s = g.source(a), t = g.target(a);
    require_shape(r.rhoE[a], r.dimE[t], r.dimE[s], "rhoE at " + g.arrow_name(a));
    require_shape(r.rhoC[a], r.dimC[t], r.dimC[s], "rhoC at " + g.arrow_name(a));
  }
  for (auto [a, b] : g.composable_pairs()) {
    require_shape(r.gamma(a, b), r.dimC[g.target(a)], r.dimE[g.source(b)],
                  "gamma at " + g.arrow_name(a) + "," + g.arrow_name(b));
  }
}

void check_morphism_shapes(const RuthMorphism& m) {
  require(m.source && m.target, "morphism endpoints are missing");
  require(m.source->base == m.target->base, "morphism endpoints have different bases");
  const auto& r = *m.source;
  const auto& r2 = *m.target;
  const auto& g = *r.base;
  require(m.PhiE.size() == r.dimE.size() && m.PhiC.size() == r.dimC.size() &&
              m.mu.size() == static_cast<std::size_t>(g.num_arrows()),
          "morphism data has the wrong length");
  for (int x = 0; x < g.num_objects(); ++x) {
    require_shape(m.PhiE[x], r2.dimE[x], r.dimE[x], "PhiE at " + g.object_name(x));
    require_shape(m.PhiC[x], r2.dimC[x], r.dimC[x], "PhiC at " + g.object_name(x));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    require_shape(m.mu[a], r2.dimC[g.target(a)], r.dimE[g.source(a)], "mu at " + g.arrow_name(a));
  }
}

Report check_ruth(const TwoTermRuth& r) {
  check_ruth_shapes(r);
  const auto& g = *r.base;
  Report rep;
  for (int x = 0; x < g.num_objects(); ++x) {
    const ArrowId u = g.unit(x);
    if (!r.rhoE[u].is_identity() || !r.rhoC[u].is_identity()) {
      rep.add("unitality of rho", {g.arrow_name(u)});
    }
  }
  for (auto [a, b] : g.composable_pairs()) {
    if ((g.is_unit(a) || g.is_unit(b)) && !r.gamma(a, b).is_zero()) {
      rep.add("unitality of gamma", {g.arrow_name(a), g.arrow_name(b)});
    }
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (!(r.rhoE[a] * r.anchor[g.source(a)] == r.anchor[g.target(a)] * r.rhoC[a])) {
      rep.add("eq1 rhoE d = d rhoC", {g.arrow_name(a)});
    }
  }
  for (auto [a, b] : g.composable_pairs()) {
    const ArrowId ab = g.compose(a, b);
    const Matrix& gab = r.gamma(a, b);
    if (!(r.rhoC[a] * r.rhoC[b] - r.rhoC[ab] + gab * r.anchor[g.source(b)]).is_zero()) {
      rep.add("eq2 rhoC composition", {g.arrow_name(a), g.arrow_name(b)});
    }
    if (!(r.rhoE[a] * r.rhoE[b] - r.rhoE[ab] + r.anchor[g.target(a)] * gab).is_zero()) {
      rep.add("eq3 rhoE composition", {g.arrow_name(a), g.arrow_name(b)});
    }
  }
  for (auto [a, b] : g.composable_pairs()) {
    const ArrowId ab = g.compose(a, b);
    for (int c = 0; c < g.num_arrows(); ++c) {
      if (!g.composable(b, c)) continue;
      const ArrowId bc = g.compose(b, c);
      Matrix lhs = r.rhoC[a] * r.gamma(b, c);
      lhs -= r.gamma(ab, c);
      lhs += r.gamma(a, bc);
      lhs -= r.gamma(a, b) * r.rhoE[c];
      if (!lhs.is_zero()) {
        rep.add("eq4 gamma cocycle", {g.arrow_name(a), g.arrow_name(b), g.arrow_name(c)});
      }
    }
  }
  return rep;
}

Report check_ruth_morphism(const RuthMorphism& m) {
  check_morphism_shapes(m);
  for (const auto* end : {m.source, m.target}) {
    const Report er = check_ruth(*end);
    if (!er.ok()) throw InvalidInput("morphism endpoint is not a valid ruth: " + er.summary());
  }
  const auto& r = *m.source;
  const auto& r2 = *m.target;
  const auto& g = *r.base;
  Report rep;
  for (int x = 0; x < g.num_objects(); ++x) {
    if (!m.mu[g.unit(x)].is_zero()) rep.add("unitality of mu", {g.arrow_name(g.unit(x))});
    if (!(r2.anchor[x] * m.PhiC[x] == m.PhiE[x] * r.anchor[x])) {
      rep.add("eq1 anchor compatibility", {g.object_name(x)});
    }
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto s = g.source(a), t = g.target(a);
    if (!(r2.rhoE[a] * m.PhiE[s] + r2.anchor[t] * m.mu[a] - m.PhiE[t] * r.rhoE[a]).is_zero()) {
      rep.add("eq2 E intertwining", {g.arrow_name(a)});
    }
    if (!(m.PhiC[t] * r.rhoC[a] - m.mu[a] * r.anchor[s] - r2.rhoC[a] * m.PhiC[s]).is_zero()) {
      rep.add("eq3 C intertwining", {g.arrow_name(a)});
    }
  }
  for (auto [a, b] : g.composable_pairs()) {
    const ArrowId ab = g.compose(a, b);
    Matrix lhs = m.PhiC[g.target(a)] * r.gamma(a, b);
    lhs += m.mu[a] * r.rhoE[b];
    lhs += r2.rhoC[a] * m.mu[b];
    lhs -= m.mu[ab];
    lhs -= r2.gamma(a, b) * m.PhiE[g.source(b)];
    if (!lhs.is_zero()) rep.add("eq4 gamma compatibility", {g.arrow_name(a), g.arrow_name(b)});
  }
  return rep;
}

RuthMorphism identity_morphism(const TwoTermRuth& r) {
  RuthMorphism m{&r, &r, {}, {}, {}};
  const auto& g = *r.base;
  for (int x = 0; x < g.num_objects(); ++x) {
    m.PhiE.push_back(Matrix::identity(r.dimE[x]));
    m.PhiC.push_back(Matrix::identity(r.dimC[x]));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    m.mu.push_back(Matrix::zero(r.dimC[g.target(a)], r.dimE[g.source(a)]));
  }
  return m;
}

RuthMorphism zero_morphism(const TwoTermRuth& from, const TwoTermRuth& to) {
  if (from.base != to.base) throw InvalidInput("ruths live over different bases");
  RuthMorphism m{&from, &to, {}, {}, {}};
  const auto& g = *from.base;
  for (int x = 0; x < g.num_objects(); ++x) {
    m.PhiE.push_back(Matrix::zero(to.dimE[x], from.dimE[x]));
    m.PhiC.push_back(Matrix::zero(to.dimC[x], from.dimC[x]));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    m.mu.push_back(Matrix::zero(to.dimC[g.target(a)], from.dimE[g.source(a)]));
  }
  return m;
}

RuthMorphism compose_ruth_morphisms(const RuthMorphism& m2, const RuthMorphism& m1) {
  if (m1.target != m2.source) throw InvalidInput("morphisms are not composable");
  check_morphism_shapes(m1);
  check_morphism_shapes(m2);
  RuthMorphism m{m1.source, m2.target, {}, {}, {}};
  const auto& g = *m1.source->base;
  for (int x = 0; x < g.num_objects(); ++x) {
    m.PhiE.push_back(m2.PhiE[x] * m1.PhiE[x]);
    m.PhiC.push_back(m2.PhiC[x] * m1.PhiC[x]);
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    m.mu.push_back(m2.PhiC[g.target(a)] * m1.mu[a] + m2.mu[a] * m1.PhiE[g.source(a)]);
  }
  return m;
}

bool same_morphism_data(const RuthMorphism& a, const RuthMorphism& b) {
  return a.PhiE == b.PhiE && a.PhiC == b.PhiC && a.mu == b.mu;
}

CochainComplex core_complex(const TwoTermRuth& r, ObjectId x) {
  return {-1, {r.dimC[x], r.dimE[x]}, {r.anchor[x]}, false};
}

RuthQuasiIsoCertificate is_quasi_iso(const RuthMorphism& m) {
  const Report rep = check_ruth_morphism(m);
  if (!rep.ok()) throw InvalidInput("invalid ruth morphism: " + rep.summary());
  RuthQuasiIsoCertificate cert;
  cert.is_quasi_iso = true;
  for (int x = 0; x < m.source->base->num_objects(); ++x) {
    auto c = chain_map_is_quasi_iso(core_complex(*m.source, x), core_complex(*m.target, x),
                                    {m.PhiC[x], m.PhiE[x]});
    cert.is_quasi_iso = cert.is_quasi_iso && c.is_quasi_iso;
    cert.per_object.push_back(std::move(c));
  }
  return cert;
}

TwoTermRuth direct_sum(const TwoTermRuth& a, const TwoTermRuth& b) {
  if (a.base != b.base) throw InvalidInput("direct sum needs a common base");
  check_ruth_shapes(a);
  check_ruth_shapes(b);
  const auto& g = *a.base;
  TwoTermRuth r;
  r.base = a.base;
  for (int x = 0; x < g.num_objects(); ++x) {
    r.dimE.push_back(a.dimE[x] + b.dimE[x]);
    r.dimC.push_back(a.dimC[x] + b.dimC[x]);
    r.anchor.push_back(block_diag(a.anchor[x], b.anchor[x]));
  }
  for (int e = 0; e < g.num_arrows(); ++e) {
    r.rhoE.push_back(block_diag(a.rhoE[e], b.rhoE[e]));
    r.rhoC.push_back(block_diag(a.rhoC[e], b.rhoC[e]));
  }
  r.gamma_table.resize(a.gamma_table.size());
  for (auto [e, f] : g.composable_pairs()) r.gamma(e, f) = block_diag(a.gamma(e, f), b.gamma(e, f));
  return r;
}

TwoTermRuth pullback_ruth(const GroupoidMap& f, const TwoTermRuth& r) {
  const Report fr = validate_functor(f);
  if (!fr.ok()) throw InvalidInput("invalid functor: " + fr.summary());
  if (f.codomain != r.base) throw InvalidInput("functor does not land in the ruth's base");
  check_ruth_shapes(r);
  const auto& g = *f.domain;
  TwoTermRuth out;
  out.base = f.domain;
  for (int x = 0; x < g.num_objects(); ++x) {
    out.dimE.push_back(r.dimE[f.obj(x)]);
    out.dimC.push_back(r.dimC[f.obj(x)]);
    out.anchor.push_back(r.anchor[f.obj(x)]);
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    out.rhoE.push_back(r.rhoE[f.arr(a)]);
    out.rhoC.push_back(r.rhoC[f.arr(a)]);
  }
  out.gamma_table.resize(static_cast<std::size_t>(g.num_arrows()) * g.num_arrows());
  for (auto [a, b] : g.composable_pairs()) out.gamma(a, b) = r.gamma(f.arr(a), f.arr(b));
  return out;
}

GaugeResult gauge_transform(const TwoTermRuth& r, const std::vector<Matrix>& PhiE,
                            const std::vector<Matrix>& PhiC, const std::vector<Matrix>& mu) {
  check_ruth_shapes(r);
  const auto& g = *r.base;
  const auto n = static_cast<std::size_t>(g.num_objects());
  if (PhiE.size() != n || PhiC.size() != n || mu.size() != static_cast<std::size_t>(g.num_arrows())) {
    throw DimensionError("gauge data has the wrong length");
  }
  std::vector<Matrix> invE, invC;
  for (std::size_t x = 0; x < n; ++x) {
    require_shape(PhiE[x], r.dimE[x], r.dimE[x], "PhiE");
    require_shape(PhiC[x], r.dimC[x], r.dimC[x], "PhiC");
    auto ie = inverse(PhiE[x]);
    auto ic = inverse(PhiC[x]);
    if (!ie || !ic) throw InvalidInput("gauge transformation is not invertible at " + g.object_name(x));
    invE.push_back(std::move(*ie));
    invC.push_back(std::move(*ic));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    require_shape(mu[a], r.dimC[g.target(a)], r.dimE[g.source(a)], "mu");
    if (g.is_unit(a) && !mu[a].is_zero()) throw InvalidInput("mu must vanish at units");
  }
  auto out = std::make_unique<TwoTermRuth>();
  auto& r2 = *out;
  r2.base = r.base;
  r2.dimE = r.dimE;
  r2.dimC = r.dimC;
  for (std::size_t x = 0; x < n; ++x) r2.anchor.push_back(PhiE[x] * r.anchor[x] * invC[x]);
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto s = g.source(a), t = g.target(a);
    r2.rhoE.push_back((PhiE[t] * r.rhoE[a] - r2.anchor[t] * mu[a]) * invE[s]);
    r2.rhoC.push_back((PhiC[t] * r.rhoC[a] - mu[a] * r.anchor[s]) * invC[s]);
  }
  r2.gamma_table.resize(r.gamma_table.size());
  for (auto [a, b] : g.composable_pairs()) {
    Matrix m = PhiC[g.target(a)] * r.gamma(a, b);
    m += mu[a] * r.rhoE[b];
    m += r2.rhoC[a] * mu[b];
    m -= mu[g.compose(a, b)];
    r2.gamma(a, b) = m * invE[g.source(b)];
  }
  GaugeResult res{std::move(out), {}};
  res.morphism = RuthMorphism{&r, res.ruth.get(), PhiE, PhiC, mu};
  return res;
}

TwoTermRuth dual_ruth(const TwoTermRuth& r, DualSigns signs) {
  check_ruth_shapes(r);
  const auto& g = *r.base;
  TwoTermRuth d;
  d.base = r.base;
  d.dimE = r.dimC;
  d.dimC = r.dimE;
  for (int x = 0; x < g.num_objects(); ++x) {
    d.anchor.push_back(Rational(signs.anchor) * r.anchor[x].transpose());
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    d.rhoE.push_back(r.rhoC[g.inverse(a)].transpose());
    d.rhoC.push_back(r.rhoE[g.inverse(a)].transpose());
  }
  d.gamma_table.resize(r.gamma_table.size());
  for (auto [a, b] : g.composable_pairs()) {
    d.gamma(a, b) = Rational(signs.gamma) * r.gamma(g.inverse(b), g.inverse(a)).transpose();
  }
  return d;
}

RuthMorphism dual_ruth_morphism(const RuthMorphism& m, const TwoTermRuth& dual_target,
                                const TwoTermRuth& dual_source) {
  check_morphism_shapes(m);
  const auto& g = *m.source->base;
  RuthMorphism d{&dual_target, &dual_source, {}, {}, {}};
  for (int x = 0; x < g.num_objects(); ++x) {
    d.PhiE.push_back(m.PhiC[x].transpose());
    d.PhiC.push_back(m.PhiE[x].transpose());
  }
  for (int a = 0; a < g.num_arrows(); ++a) d.mu.push_back(-m.mu[g.inverse(a)].transpose());
  return d;
}

bool same_ruth(const TwoTermRuth& a, const TwoTermRuth& b) {
  if (a.base != b.base || a.dimE != b.dimE || a.dimC != b.dimC || a.anchor != b.anchor ||
      a.rhoE != b.rhoE || a.rhoC != b.rhoC) {
    return false;
  }
  for (auto [e, f] : a.base->composable_pairs()) {
    if (!(a.gamma(e, f) == b.gamma(e, f))) return false;
  }
  return true;
}

namespace fixtures {

TwoTermRuth trivial_rep(const FiniteGroupoid& g, std::size_t k) {
  auto r = TwoTermRuth::zeros(g, std::vector<std::size_t>(g.num_objects(), k),
                              std::vector<std::size_t>(g.num_objects(), 0));
  for (auto& m : r.rhoE) m = Matrix::identity(k);
  return r;
}

TwoTermRuth sign_rep(const FiniteGroupoid& z2) {
  if (z2.num_objects() != 1 || z2.num_arrows() != 2) throw InvalidInput("sign rep needs Z2");
  auto r = trivial_rep(z2, 1);
  for (int a = 0; a < 2; ++a) {
    if (!z2.is_unit(a)) r.rhoE[a] = Matrix{{-1}};
  }
  return r;
}

TwoTermRuth acyclic_ruth(const FiniteGroupoid& g, std::size_t k) {
  const std::vector<std::size_t> dims(g.num_objects(), k);
  auto r = TwoTermRuth::zeros(g, dims, dims);
  for (auto& m : r.anchor) m = Matrix::identity(k);
  for (auto& m : r.rhoE) m = Matrix::identity(k);
  for (auto& m : r.rhoC) m = Matrix::identity(k);
  return r;
}

TwoTermRuth zero_ruth(const FiniteGroupoid& g) {
  const std::vector<std::size_t> dims(g.num_objects(), 0);
  return TwoTermRuth::zeros(g, dims, dims);
}

}  // namespace fixtures

}  // namespace vbg
