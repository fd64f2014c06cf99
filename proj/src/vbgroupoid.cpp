#include "vbg/vbgroupoid.hpp"

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

std::optional<Matrix> try_inverse(const VBGroupoid& v, ArrowId g) {
  const auto& G = *v.base;
  const ArrowId gi = G.inverse(g);
  const ObjectId s = G.source(g), t = G.target(g);
  const Matrix& mg = v.m(g, gi);
  const Matrix m1 = mg.col_range(0, v.dimGamma[g]);
  const Matrix m2 = mg.col_range(v.dimGamma[g], mg.cols());
  auto w = solve_linear(vstack(m2, v.t[gi]), vstack(v.u[t] * v.t[g] - m1, v.s[g]));
  if (!w) return std::nullopt;
  const Matrix back = v.m(gi, g) * vstack(*w, Matrix::identity(v.dimGamma[g]));
  if (!(back == v.u[s] * v.s[g])) return std::nullopt;
  return w;
}

}  // namespace

Matrix VBGroupoid::mul(ArrowId g, ArrowId h, const Matrix& v, const Matrix& w) const {
  return m(g, h) * vstack(v, w);
}

void check_vb_shapes(const VBGroupoid& v) {
  require(v.base != nullptr, "VB-groupoid has no base groupoid");
  const auto& G = *v.base;
  const auto n = static_cast<std::size_t>(G.num_objects());
  const auto na = static_cast<std::size_t>(G.num_arrows());
  require(v.dimE.size() == n && v.u.size() == n, "per-object data does not match the object count");
  require(v.dimGamma.size() == na && v.s.size() == na && v.t.size() == na,
          "per-arrow data does not match the arrow count");
  require(v.m_table.size() == na * na, "multiplication table has the wrong size");
  for (std::size_t g = 0; g < na; ++g) {
    require_shape(v.s[g], v.dimE[G.source(g)], v.dimGamma[g], "s at " + G.arrow_name(g));
    require_shape(v.t[g], v.dimE[G.target(g)], v.dimGamma[g], "t at " + G.arrow_name(g));
  }
  for (std::size_t x = 0; x < n; ++x) {
    require_shape(v.u[x], v.unit_dim(x), v.dimE[x], "u at " + G.object_name(x));
  }
  for (auto [g, h] : G.composable_pairs()) {
    require_shape(v.m(g, h), v.dimGamma[G.compose(g, h)], v.dimGamma[g] + v.dimGamma[h],
                  "m at " + G.arrow_name(g) + "," + G.arrow_name(h));
  }
}

Matrix fib_basis(const VBGroupoid& v, ArrowId g, ArrowId h) {
  return kernel(hstack(v.s[g], -v.t[h]));
}

Report check_vbgroupoid(const VBGroupoid& v) {
  check_vb_shapes(v);
  const auto& G = *v.base;
  Report rep;
  for (int g = 0; g < G.num_arrows(); ++g) {
    if (rank(v.s[g]) != v.dimE[G.source(g)]) rep.add("source surjective", {G.arrow_name(g)});
    if (rank(v.t[g]) != v.dimE[G.target(g)]) rep.add("target surjective", {G.arrow_name(g)});
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    const ArrowId e = G.unit(x);
    if (!(v.s[e] * v.u[x]).is_identity() || !(v.t[e] * v.u[x]).is_identity()) {
      rep.add("unit section", {G.object_name(x)});
    }
  }
  for (auto [g, h] : G.composable_pairs()) {
    const Matrix f = fib_basis(v, g, h);
    const Matrix top = f.row_range(0, v.dimGamma[g]);
    const Matrix bottom = f.row_range(v.dimGamma[g], f.rows());
    const Matrix p = v.m(g, h) * f;
    const ArrowId gh = G.compose(g, h);
    if (!(v.s[gh] * p == v.s[h] * bottom)) {
      rep.add("mult source", {G.arrow_name(g), G.arrow_name(h)});
    }
    if (!(v.t[gh] * p == v.t[g] * top)) {
      rep.add("mult target", {G.arrow_name(g), G.arrow_name(h)});
    }
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    const Matrix id = Matrix::identity(v.dimGamma[g]);
    if (!(v.mul(g, G.unit(s), id, v.u[s] * v.s[g]) == id) ||
        !(v.mul(G.unit(t), g, v.u[t] * v.t[g], id) == id)) {
      rep.add("unit law", {G.arrow_name(g)});
    }
    if (!try_inverse(v, g)) rep.add("inverse", {G.arrow_name(g)});
  }
  for (auto [g, h] : G.composable_pairs()) {
    const ArrowId gh = G.compose(g, h);
    const std::size_t dg = v.dimGamma[g], dh = v.dimGamma[h];
    for (int k = 0; k < G.num_arrows(); ++k) {
      if (!G.composable(h, k)) continue;
      const std::size_t dk = v.dimGamma[k];
      Matrix eqs(v.dimE[G.source(g)] + v.dimE[G.source(h)], dg + dh + dk);
      eqs.set_block(0, 0, v.s[g]);
      eqs.set_block(0, dg, -v.t[h]);
      eqs.set_block(v.dimE[G.source(g)], dg, v.s[h]);
      eqs.set_block(v.dimE[G.source(g)], dg + dh, -v.t[k]);
      const Matrix f = kernel(eqs);
      const Matrix a = f.row_range(0, dg);
      const Matrix b = f.row_range(dg, dg + dh);
      const Matrix c = f.row_range(dg + dh, dg + dh + dk);
      const Matrix lhs = v.mul(gh, k, v.mul(g, h, a, b), c);
      const Matrix rhs = v.mul(g, G.compose(h, k), a, v.mul(h, k, b, c));
      if (!(lhs == rhs)) {
        rep.add("associativity", {G.arrow_name(g), G.arrow_name(h), G.arrow_name(k)});
      }
    }
  }
  return rep;
}

std::vector<Matrix> compute_inverses(const VBGroupoid& v) {
  std::vector<Matrix> out;
  for (int g = 0; g < v.base->num_arrows(); ++g) {
    auto w = try_inverse(v, g);
    if (!w) throw InvalidInput("arrow " + v.base->arrow_name(g) + " has no linear inverse");
    out.push_back(std::move(*w));
  }
  return out;
}

VBGroupoid zero_vb(const FiniteGroupoid& g) {
  VBGroupoid v;
  v.base = &g;
  v.dimE.assign(g.num_objects(), 0);
  v.dimGamma.assign(g.num_arrows(), 0);
  v.s.assign(g.num_arrows(), Matrix());
  v.t.assign(g.num_arrows(), Matrix());
  v.u.assign(g.num_objects(), Matrix());
  v.m_table.assign(static_cast<std::size_t>(g.num_arrows()) * g.num_arrows(), Matrix());
  return v;
}

Report check_cleavage(const VBGroupoid& v, const Cleavage& c) {
  const auto& G = *v.base;
  Report rep;
  if (c.sigma.size() != static_cast<std::size_t>(G.num_arrows())) {
    rep.add("cleavage length");
    return rep;
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const auto& sg = c.sigma[g];
    if (sg.rows() != v.dimGamma[g] || sg.cols() != v.dimE[G.source(g)]) {
      rep.add("cleavage shape", {G.arrow_name(g)});
      continue;
    }
    if (!(v.s[g] * sg).is_identity()) rep.add("section of source", {G.arrow_name(g)});
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    if (rep.ok() && !(c.sigma[G.unit(x)] == v.u[x])) rep.add("unital", {G.object_name(x)});
  }
  return rep;
}

Cleavage choose_cleavage(const VBGroupoid& v) {
  check_vb_shapes(v);
  const auto& G = *v.base;
  Cleavage c;
  for (int g = 0; g < G.num_arrows(); ++g) {
    auto ri = right_inverse(v.s[g]);
    if (!ri) throw InvalidInput("source map is not surjective at " + G.arrow_name(g));
    c.sigma.push_back(std::move(*ri));
  }
  for (int x = 0; x < G.num_objects(); ++x) c.sigma[G.unit(x)] = v.u[x];
  return c;
}

Matrix CoreData::coords(ObjectId x, const Matrix& vectors) const {
  return solve_or_throw(basis[x], vectors, "vector does not lie in the core");
}

CoreData core(const VBGroupoid& v) {
  check_vb_shapes(v);
  CoreData c;
  for (int x = 0; x < v.base->num_objects(); ++x) {
    const ArrowId e = v.base->unit(x);
    c.basis.push_back(kernel(v.s[e]));
    c.anchor.push_back(v.t[e] * c.basis.back());
  }
  return c;
}

Report check_vbmap(const VBMap& f) {
  require(f.source && f.target, "VB-map endpoints are missing");
  const auto& a = *f.source;
  const auto& b = *f.target;
  check_vb_shapes(a);
  check_vb_shapes(b);
  Report rep;
  if (f.base_map.domain != a.base || f.base_map.codomain != b.base) {
    rep.add("base map endpoints");
    return rep;
  }
  rep.merge(validate_functor(f.base_map), "base map");
  if (!rep.ok()) return rep;
  const auto& G = *a.base;
  require(f.obj.size() == a.dimE.size() && f.arr.size() == a.dimGamma.size(),
          "VB-map data has the wrong length");
  for (int x = 0; x < G.num_objects(); ++x) {
    require_shape(f.obj[x], b.dimE[f.base_map.obj(x)], a.dimE[x], "VB-map at " + G.object_name(x));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    require_shape(f.arr[g], b.dimGamma[f.base_map.arr(g)], a.dimGamma[g],
                  "VB-map at " + G.arrow_name(g));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ArrowId fg = f.base_map.arr(g);
    if (!(b.s[fg] * f.arr[g] == f.obj[G.source(g)] * a.s[g])) rep.add("source", {G.arrow_name(g)});
    if (!(b.t[fg] * f.arr[g] == f.obj[G.target(g)] * a.t[g])) rep.add("target", {G.arrow_name(g)});
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    if (!(f.arr[G.unit(x)] * a.u[x] == b.u[f.base_map.obj(x)] * f.obj[x])) {
      rep.add("unit", {G.object_name(x)});
    }
  }
  for (auto [g, h] : G.composable_pairs()) {
    const Matrix fb = fib_basis(a, g, h);
    const Matrix top = fb.row_range(0, a.dimGamma[g]);
    const Matrix bottom = fb.row_range(a.dimGamma[g], fb.rows());
    const Matrix lhs = f.arr[G.compose(g, h)] * (a.m(g, h) * fb);
    const Matrix rhs =
        b.mul(f.base_map.arr(g), f.base_map.arr(h), f.arr[g] * top, f.arr[h] * bottom);
    if (!(lhs == rhs)) rep.add("multiplication", {G.arrow_name(g), G.arrow_name(h)});
  }
  return rep;
}

VBMap identity_vbmap(const VBGroupoid& v) {
  VBMap f{&v, &v, identity_map(*v.base), {}, {}};
  for (auto d : v.dimE) f.obj.push_back(Matrix::identity(d));
  for (auto d : v.dimGamma) f.arr.push_back(Matrix::identity(d));
  return f;
}

VBMap zero_vbmap(const VBGroupoid& from, const VBGroupoid& to) {
  if (from.base != to.base) throw InvalidInput("VB-groupoids live over different bases");
  VBMap f{&from, &to, identity_map(*from.base), {}, {}};
  for (std::size_t x = 0; x < from.dimE.size(); ++x) {
    f.obj.push_back(Matrix::zero(to.dimE[x], from.dimE[x]));
  }
  for (std::size_t g = 0; g < from.dimGamma.size(); ++g) {
    f.arr.push_back(Matrix::zero(to.dimGamma[g], from.dimGamma[g]));
  }
  return f;
}

VBMap compose_vbmaps(const VBMap& b, const VBMap& a) {
  if (a.target != b.source) throw InvalidInput("VB-maps are not composable");
  VBMap f{a.source, b.target, compose_maps(b.base_map, a.base_map), {}, {}};
  for (std::size_t x = 0; x < a.obj.size(); ++x) {
    f.obj.push_back(b.obj[a.base_map.obj(static_cast<int>(x))] * a.obj[x]);
  }
  for (std::size_t g = 0; g < a.arr.size(); ++g) {
    f.arr.push_back(b.arr[a.base_map.arr(static_cast<int>(g))] * a.arr[g]);
  }
  return f;
}

bool vbmap_invertible(const VBMap& f) {
  auto bijective = [](const std::vector<int>& m, int n) {
    std::vector<bool> hit(n, false);
    if (static_cast<int>(m.size()) != n) return false;
    for (auto k : m) {
      if (hit[k]) return false;
      hit[k] = true;
    }
    return true;
  };
  if (!bijective(f.base_map.object_map, f.target->base->num_objects()) ||
      !bijective(f.base_map.arrow_map, f.target->base->num_arrows())) {
    return false;
  }
  for (const auto* part : {&f.obj, &f.arr}) {
    for (const auto& m : *part) {
      if (m.rows() != m.cols() || !is_invertible(m)) return false;
    }
  }
  return true;
}

bool same_vbmap_data(const VBMap& a, const VBMap& b) {
  return same_map(a.base_map, b.base_map) && a.obj == b.obj && a.arr == b.arr;
}

bool same_vb(const VBGroupoid& a, const VBGroupoid& b) {
  if (a.base != b.base || a.dimE != b.dimE || a.dimGamma != b.dimGamma || a.s != b.s ||
      a.t != b.t || a.u != b.u) {
    return false;
  }
  for (auto [g, h] : a.base->composable_pairs()) {
    if (!(a.m(g, h) == b.m(g, h))) return false;
  }
  return true;
}

VBGroupoid grothendieck(const TwoTermRuth& r) {
  const Report rep = check_ruth(r);
  if (!rep.ok()) throw InvalidInput("invalid ruth: " + rep.summary());
  const auto& G = *r.base;
  VBGroupoid v = zero_vb(G);
  v.dimE = r.dimE;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    v.dimGamma[g] = r.dimC[t] + r.dimE[s];
    v.s[g] = hstack(Matrix::zero(r.dimE[s], r.dimC[t]), Matrix::identity(r.dimE[s]));
    v.t[g] = hstack(r.anchor[t], r.rhoE[g]);
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    v.u[x] = vstack(Matrix::zero(r.dimC[x], r.dimE[x]), Matrix::identity(r.dimE[x]));
  }
  for (auto [g, h] : G.composable_pairs()) {
    const ObjectId tg = G.target(g), sg = G.source(g), th = G.target(h), sh = G.source(h);
    const std::size_t ct = r.dimC[tg];
    Matrix m(ct + r.dimE[sh], v.dimGamma[g] + v.dimGamma[h]);
    // Columns: (c1 ∈ C_{tg}, e1 ∈ E_{sg}, c2 ∈ C_{th}, e2 ∈ E_{sh}).
    const std::size_t c2 = ct + r.dimE[sg];
    const std::size_t e2 = c2 + r.dimC[th];
    m.set_block(0, 0, Matrix::identity(ct));
    m.set_block(0, c2, r.rhoC[g]);
    m.set_block(0, e2, -r.gamma(g, h));
    m.set_block(ct, e2, Matrix::identity(r.dimE[sh]));
    v.m(g, h) = std::move(m);
  }
  return v;
}

SplitResult split(const VBGroupoid& v, const Cleavage& c) {
  check_vb_shapes(v);
  const Report cr = check_cleavage(v, c);
  if (!cr.ok()) throw InvalidInput("invalid cleavage: " + cr.summary());
  const auto& G = *v.base;
  const auto inv = compute_inverses(v);
  SplitResult out;
  out.cleavage = c;
  out.core = core(v);
  const auto& K = out.core;
  std::vector<std::size_t> dimC;
  for (int x = 0; x < G.num_objects(); ++x) dimC.push_back(K.dim(x));
  auto r = std::make_unique<TwoTermRuth>(TwoTermRuth::zeros(G, v.dimE, dimC));
  r->anchor = K.anchor;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    const ArrowId gi = G.inverse(g);
    r->rhoE[g] = v.t[g] * c.sigma[g];
    const Matrix a = v.mul(g, G.unit(s), c.sigma[g] * K.anchor[s], K.basis[s]);
    const Matrix b = v.mul(g, gi, a, Matrix::zero(v.dimGamma[gi], dimC[s]));
    r->rhoC[g] = K.coords(t, b);
  }
  for (auto [g, h] : G.composable_pairs()) {
    const ArrowId gh = G.compose(g, h);
    const Matrix prod = v.mul(g, h, c.sigma[g] * r->rhoE[h], c.sigma[h]);
    const Matrix p = v.mul(gh, G.inverse(gh), prod, inv[gh] * c.sigma[gh]);
    r->gamma(g, h) = K.coords(G.target(g), v.u[G.target(g)] * r->rhoE[gh] - p);
  }
  out.ruth = std::move(r);
  out.model = std::make_unique<VBGroupoid>(grothendieck(*out.ruth));
  out.iso = VBMap{&v, out.model.get(), identity_map(G), {}, {}};
  for (auto d : v.dimE) out.iso.obj.push_back(Matrix::identity(d));
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId t = G.target(g);
    const Matrix id = Matrix::identity(v.dimGamma[g]);
    const Matrix back = v.mul(g, G.inverse(g), id, inv[g] * c.sigma[g] * v.s[g]);
    const Matrix vertical = back - v.u[t] * out.ruth->rhoE[g] * v.s[g];
    out.iso.arr.push_back(vstack(K.coords(t, vertical), v.s[g]));
  }
  return out;
}

VBMap grothendieck_map(const RuthMorphism& m, const VBGroupoid& source, const VBGroupoid& target) {
  const Report rep = check_ruth_morphism(m);
  if (!rep.ok()) throw InvalidInput("invalid ruth morphism: " + rep.summary());
  const auto& G = *m.source->base;
  VBMap f{&source, &target, identity_map(G), m.PhiE, {}};
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    Matrix a(target.dimGamma[g], source.dimGamma[g]);
    a.set_block(0, 0, m.PhiC[t]);
    a.set_block(0, m.source->dimC[t], m.mu[g]);
    a.set_block(m.target->dimC[t], m.source->dimC[t], m.PhiE[s]);
    f.arr.push_back(std::move(a));
  }
  return f;
}

RuthMorphism split_map(const VBMap& f, const SplitResult& source, const SplitResult& target) {
  if (f.source != source.iso.source || f.target != target.iso.source) {
    throw InvalidInput("splittings do not match the VB-map endpoints");
  }
  const auto& G = *f.source->base;
  if (!same_map(f.base_map, identity_map(G)) || f.target->base != &G) {
    throw InvalidInput("split_map needs an identity base map");
  }
  RuthMorphism m{source.ruth.get(), target.ruth.get(), f.obj, {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) {
    m.PhiC.push_back(target.core.coords(x, f.arr[G.unit(x)] * source.core.basis[x]));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const Matrix image = target.iso.arr[g] * f.arr[g] * source.cleavage.sigma[g];
    m.mu.push_back(image.row_range(0, target.core.dim(G.target(g))));
  }
  return m;
}

}  // namespace vbg
