#include "vbg/vbgroupoid.hpp"

#include "vb_internal.hpp"

namespace vbg {

namespace {

bool identity_base(const VBMap& f) {
  return f.source->base == f.target->base && same_map(f.base_map, identity_map(*f.source->base));
}

}  // namespace

BaseChange base_change(const GroupoidMap& f, const VBGroupoid& v) {
  const Report fr = validate_functor(f);
  if (!fr.ok()) throw InvalidInput("invalid functor: " + fr.summary());
  if (f.codomain != v.base) throw InvalidInput("functor does not land in the VB-groupoid's base");
  check_vb_shapes(v);
  const auto& G = *f.domain;
  BaseChange out;
  out.vb = std::make_unique<VBGroupoid>(zero_vb(G));
  auto& w = *out.vb;
  for (int x = 0; x < G.num_objects(); ++x) {
    w.dimE[x] = v.dimE[f.obj(x)];
    w.u[x] = v.u[f.obj(x)];
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    w.dimGamma[g] = v.dimGamma[f.arr(g)];
    w.s[g] = v.s[f.arr(g)];
    w.t[g] = v.t[f.arr(g)];
  }
  for (auto [g, h] : G.composable_pairs()) w.m(g, h) = v.m(f.arr(g), f.arr(h));
  out.map = VBMap{&w, &v, f, {}, {}};
  for (auto d : w.dimE) out.map.obj.push_back(Matrix::identity(d));
  for (auto d : w.dimGamma) out.map.arr.push_back(Matrix::identity(d));
  return out;
}

VBMoritaCertificate is_vb_morita(const VBMap& f) {
  const Report rep = check_vbmap(f);
  if (!rep.ok()) throw InvalidInput("invalid VB-map: " + rep.summary());
  VBMoritaCertificate cert;
  cert.base = is_morita(f.base_map);
  cert.is_vb_morita = cert.base.is_morita;
  const CoreData ks = core(*f.source);
  const CoreData kt = core(*f.target);
  const auto& G = *f.source->base;
  for (int x = 0; x < G.num_objects(); ++x) {
    const ObjectId fx = f.base_map.obj(x);
    const Matrix phiC = kt.coords(fx, f.arr[G.unit(x)] * ks.basis[x]);
    CochainComplex a{-1, {ks.dim(x), f.source->dimE[x]}, {ks.anchor[x]}, false};
    CochainComplex b{-1, {kt.dim(fx), f.target->dimE[fx]}, {kt.anchor[fx]}, false};
    auto qc = chain_map_is_quasi_iso(a, b, {phiC, f.obj[x]});
    cert.is_vb_morita = cert.is_vb_morita && qc.is_quasi_iso;
    cert.fibers.push_back(std::move(qc));
  }
  return cert;
}

VBGroupoid dual_vb(const VBGroupoid& v) {
  const Report rep = check_vbgroupoid(v);
  if (!rep.ok()) throw InvalidInput("invalid VB-groupoid: " + rep.summary());
  const SplitResult sp = split(v, choose_cleavage(v));
  return grothendieck(dual_ruth(*sp.ruth));
}

DualMap dual_vbmap(const VBMap& f) {
  if (!identity_base(f)) throw InvalidInput("dual_vbmap needs an identity base map");
  const SplitResult sa = split(*f.source, choose_cleavage(*f.source));
  const SplitResult sb = split(*f.target, choose_cleavage(*f.target));
  const RuthMorphism m = split_map(f, sa, sb);
  const TwoTermRuth da = dual_ruth(*sa.ruth);
  const TwoTermRuth db = dual_ruth(*sb.ruth);
  const RuthMorphism dm = dual_ruth_morphism(m, db, da);
  DualMap out;
  out.dual_source = std::make_unique<VBGroupoid>(grothendieck(da));
  out.dual_target = std::make_unique<VBGroupoid>(grothendieck(db));
  out.map = grothendieck_map(dm, *out.dual_target, *out.dual_source);
  return out;
}

VBGroupoid acyclic_vb(const FiniteGroupoid& G, const std::vector<std::size_t>& dims) {
  if (dims.size() != static_cast<std::size_t>(G.num_objects())) {
    throw DimensionError("one rank per object is required");
  }
  VBGroupoid v = zero_vb(G);
  v.dimE = dims;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const auto ds = dims[G.source(g)], dt = dims[G.target(g)];
    v.dimGamma[g] = dt + ds;
    v.s[g] = hstack(Matrix::zero(ds, dt), Matrix::identity(ds));
    v.t[g] = hstack(Matrix::identity(dt), Matrix::zero(dt, ds));
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    v.u[x] = vstack(Matrix::identity(dims[x]), Matrix::identity(dims[x]));
  }
  for (auto [g, h] : G.composable_pairs()) {
    const auto d3 = dims[G.target(g)], d2 = dims[G.source(g)];
    const auto d2b = dims[G.target(h)], d1 = dims[G.source(h)];
    Matrix m(d3 + d1, d3 + d2 + d2b + d1);
    m.set_block(0, 0, Matrix::identity(d3));
    m.set_block(d3, d3 + d2 + d2b, Matrix::identity(d1));
    v.m(g, h) = std::move(m);
  }
  return v;
}

bool is_acyclic(const VBGroupoid& v) {
  const CoreData k = core(v);
  for (const auto& a : k.anchor) {
    if (a.rows() != a.cols() || !is_invertible(a)) return false;
  }
  return true;
}

VBGroupoid direct_sum_vb(const VBGroupoid& a, const VBGroupoid& b) {
  if (a.base != b.base) throw InvalidInput("direct sum needs a common base");
  check_vb_shapes(a);
  check_vb_shapes(b);
  const auto& G = *a.base;
  VBGroupoid v = zero_vb(G);
  for (int x = 0; x < G.num_objects(); ++x) {
    v.dimE[x] = a.dimE[x] + b.dimE[x];
    v.u[x] = block_diag(a.u[x], b.u[x]);
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    v.dimGamma[g] = a.dimGamma[g] + b.dimGamma[g];
    v.s[g] = block_diag(a.s[g], b.s[g]);
    v.t[g] = block_diag(a.t[g], b.t[g]);
  }
  for (auto [g, h] : G.composable_pairs()) {
    const auto ag = a.dimGamma[g], bg = b.dimGamma[g], ah = a.dimGamma[h];
    const Matrix& ma = a.m(g, h);
    const Matrix& mb = b.m(g, h);
    Matrix m(v.dimGamma[G.compose(g, h)], v.dimGamma[g] + v.dimGamma[h]);
    // Input layout (a_g, b_g, a_h, b_h).
    m.set_block(0, 0, ma.col_range(0, ag));
    m.set_block(0, ag + bg, ma.col_range(ag, ma.cols()));
    m.set_block(ma.rows(), ag, mb.col_range(0, bg));
    m.set_block(ma.rows(), ag + bg + ah, mb.col_range(bg, mb.cols()));
    v.m(g, h) = std::move(m);
  }
  return v;
}

SubVB sub_vb(const VBGroupoid& v, const std::vector<Subspace>& objects,
             const std::vector<Subspace>& arrows) {
  check_vb_shapes(v);
  const auto& G = *v.base;
  if (objects.size() != v.dimE.size() || arrows.size() != v.dimGamma.size()) {
    throw DimensionError("one subspace per object and per arrow is required");
  }
  SubVB out;
  out.vb = std::make_unique<VBGroupoid>(zero_vb(G));
  auto& w = *out.vb;
  for (int x = 0; x < G.num_objects(); ++x) {
    w.dimE[x] = objects[x].dim();
    w.u[x] = arrows[G.unit(x)].coordinates(v.u[x] * objects[x].basis());
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const Matrix& b = arrows[g].basis();
    w.dimGamma[g] = arrows[g].dim();
    w.s[g] = objects[G.source(g)].coordinates(v.s[g] * b);
    w.t[g] = objects[G.target(g)].coordinates(v.t[g] * b);
  }
  for (auto [g, h] : G.composable_pairs()) {
    const Matrix f = kernel(hstack(w.s[g], -w.t[h]));
    const Matrix lifted = block_diag(arrows[g].basis(), arrows[h].basis()) * f;
    const Matrix values = arrows[G.compose(g, h)].coordinates(v.m(g, h) * lifted);
    const Matrix rest = complement(Subspace::span(f)).basis();
    const Matrix frame = hstack(f, rest);
    w.m(g, h) = hstack(values, Matrix::zero(values.rows(), rest.cols())) * *inverse(frame);
  }
  out.inclusion = VBMap{&w, &v, identity_map(G), {}, {}};
  for (const auto& s : objects) out.inclusion.obj.push_back(s.basis());
  for (const auto& s : arrows) out.inclusion.arr.push_back(s.basis());
  return out;
}

Report check_vbmap_iso(const VBMapIso& a, const VBMap& phi, const VBMap& psi) {
  if (phi.source != psi.source || phi.target != psi.target) {
    throw InvalidInput("isomorphic VB-maps must share endpoints");
  }
  if (!identity_base(phi) || !identity_base(psi)) {
    throw InvalidInput("VB-map isomorphisms need identity base maps");
  }
  const auto& src = *phi.source;
  const auto& dst = *phi.target;
  const auto& G = *src.base;
  Report rep;
  if (a.alpha.size() != src.dimE.size()) {
    rep.add("isomorphism length");
    return rep;
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto& ax = a.alpha[x];
    if (ax.rows() != dst.unit_dim(x) || ax.cols() != src.dimE[x]) {
      rep.add("isomorphism shape", {G.object_name(x)});
      return rep;
    }
    const ArrowId e = G.unit(x);
    if (!(dst.s[e] * ax == phi.obj[x])) rep.add("source is phi", {G.object_name(x)});
    if (!(dst.t[e] * ax == psi.obj[x])) rep.add("target is psi", {G.object_name(x)});
  }
  if (!rep.ok()) return rep;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId x = G.source(g), y = G.target(g);
    const Matrix lhs = dst.mul(g, G.unit(x), psi.arr[g], a.alpha[x] * src.s[g]);
    const Matrix rhs = dst.mul(G.unit(y), g, a.alpha[y] * src.t[g], phi.arr[g]);
    if (!(lhs == rhs)) rep.add("naturality", {G.arrow_name(g)});
  }
  return rep;
}

namespace detail {

VBGroupoid arrow_shape(const VBGroupoid& v, const std::vector<std::size_t>& cdims) {
  const auto& G = *v.base;
  VBGroupoid w = zero_vb(G);
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto c = cdims[x], e = v.dimE[x];
    w.dimE[x] = c + e;
    Matrix u(c + v.unit_dim(x) + c, c + e);
    u.set_block(0, 0, Matrix::identity(c));
    u.set_block(c, c, v.u[x]);
    u.set_block(c + v.unit_dim(x), 0, Matrix::identity(c));
    w.u[x] = std::move(u);
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    const auto ct = cdims[t], cs = cdims[s], dg = v.dimGamma[g];
    w.dimGamma[g] = ct + dg + cs;
    w.s[g] = Matrix(cs + v.dimE[s], w.dimGamma[g]);
    w.s[g].set_block(0, ct + dg, Matrix::identity(cs));
    w.s[g].set_block(cs, ct, v.s[g]);
    w.t[g] = Matrix(ct + v.dimE[t], w.dimGamma[g]);
    w.t[g].set_block(0, 0, Matrix::identity(ct));
    w.t[g].set_block(ct, ct, v.t[g]);
  }
  for (auto [g, h] : G.composable_pairs()) {
    const ArrowId gh = G.compose(g, h);
    const auto ctg = cdims[G.target(g)], csh = cdims[G.source(h)], th = cdims[G.target(h)];
    const auto wg = w.dimGamma[g];
    const Matrix& mv = v.m(g, h);
    Matrix m(w.dimGamma[gh], wg + w.dimGamma[h]);
    m.set_block(0, 0, Matrix::identity(ctg));
    m.set_block(ctg, ctg, mv.col_range(0, v.dimGamma[g]));
    m.set_block(ctg, wg + th, mv.col_range(v.dimGamma[g], mv.cols()));
    m.set_block(ctg + v.dimGamma[gh], wg + th + v.dimGamma[h], Matrix::identity(csh));
    w.m(g, h) = std::move(m);
  }
  return w;
}

Subspace preimage(const Matrix& m, const Subspace& s) {
  const Matrix annihilator = kernel(s.basis().transpose()).transpose();
  return kernel_space(annihilator * m);
}

}  // namespace detail

ArrowVB arrow_vb(const VBGroupoid& v) {
  const Report rep = check_vbgroupoid(v);
  if (!rep.ok()) throw InvalidInput("invalid VB-groupoid: " + rep.summary());
  const auto& G = *v.base;
  const auto inv = compute_inverses(v);
  ArrowVB out;
  out.base_core = core(v);
  const auto& K = out.base_core;
  std::vector<std::size_t> cdims;
  for (int x = 0; x < G.num_objects(); ++x) cdims.push_back(K.dim(x));
  out.vb = std::make_unique<VBGroupoid>(detail::arrow_shape(v, cdims));
  auto& w = *out.vb;

  out.sigma = VBMap{&w, &v, identity_map(G), {}, {}};
  out.tau = VBMap{&w, &v, identity_map(G), {}, {}};
  out.mu = VBMap{&v, &w, identity_map(G), {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto c = K.dim(x), e = v.dimE[x];
    out.sigma.obj.push_back(hstack(Matrix::zero(e, c), Matrix::identity(e)));
    out.tau.obj.push_back(hstack(K.anchor[x], Matrix::identity(e)));
    out.mu.obj.push_back(vstack(Matrix::zero(c, e), Matrix::identity(e)));
    out.universal.alpha.push_back(hstack(K.basis[x], v.u[x]));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId s = G.source(g), t = G.target(g);
    const ArrowId us = G.unit(s), ut = G.unit(t);
    const auto ct = K.dim(t), cs = K.dim(s), dg = v.dimGamma[g];
    const std::size_t n = ct + dg + cs;
    Matrix xv(dg, n);
    xv.set_block(0, ct, Matrix::identity(dg));
    out.sigma.arr.push_back(xv);
    out.mu.arr.push_back(xv.transpose());
    Matrix y = v.u[s] * v.s[g] * xv;
    y.add_block(0, ct + dg, K.basis[s]);
    const Matrix inner = v.mul(g, us, xv, inv[us] * y);
    Matrix z = v.u[t] * v.t[g] * xv;
    z.add_block(0, 0, K.basis[t]);
    out.tau.arr.push_back(v.mul(ut, g, z, inner));
  }
  return out;
}

VBMap twist(const VBMap& phi, const std::vector<Matrix>& alpha) {
  if (!identity_base(phi)) throw InvalidInput("twist needs an identity base map");
  const auto& src = *phi.source;
  const auto& dst = *phi.target;
  const auto& G = *src.base;
  const auto inv = compute_inverses(dst);
  const VBMapIso w = twist_iso(phi, alpha);
  VBMap out{&src, &dst, phi.base_map, {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) out.obj.push_back(dst.t[G.unit(x)] * w.alpha[x]);
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId x = G.source(g), y = G.target(g);
    const Matrix inner = dst.mul(g, G.unit(x), phi.arr[g], inv[G.unit(x)] * w.alpha[x] * src.s[g]);
    out.arr.push_back(dst.mul(G.unit(y), g, w.alpha[y] * src.t[g], inner));
  }
  return out;
}

VBMapIso twist_iso(const VBMap& phi, const std::vector<Matrix>& alpha) {
  const auto& dst = *phi.target;
  const auto& G = *dst.base;
  if (alpha.size() != static_cast<std::size_t>(G.num_objects())) {
    throw DimensionError("one twist component per object is required");
  }
  const CoreData k = core(dst);
  VBMapIso out;
  for (int x = 0; x < G.num_objects(); ++x) {
    if (alpha[x].rows() != k.dim(x) || alpha[x].cols() != phi.source->dimE[x]) {
      throw DimensionError("twist component has the wrong shape at " + G.object_name(x));
    }
    out.alpha.push_back(k.basis[x] * alpha[x] + dst.u[x] * phi.obj[x]);
  }
  return out;
}

}  // namespace vbg
