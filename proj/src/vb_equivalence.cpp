#include <map>

#include "vb_internal.hpp"
#include "vbg/vbgroupoid.hpp"

namespace vbg {

namespace {

/// Fibered product P = Γ' ×_Γ Γ^I of φ and σ, in coordinates (c, e') on
/// objects and (c', v', c) on arrows, with the maps out of it.
struct Factorization {
  const VBGroupoid* src;
  const VBGroupoid* dst;
  ArrowVB gi;
  std::unique_ptr<VBGroupoid> p;
  std::vector<Matrix> pi1_obj, pi1_arr;
  std::vector<Matrix> pi2_obj, pi2_arr;
  std::vector<Matrix> phit_obj, phit_arr;  // τ ∘ π₂
  std::vector<Matrix> iota_obj, iota_arr;
};

Factorization factor(const VBMap& phi) {
  const auto& A = *phi.source;
  const auto& B = *phi.target;
  const auto& G = *A.base;
  Factorization f{&A, &B, arrow_vb(B), nullptr, {}, {}, {}, {}, {}, {}, {}, {}};
  const auto& K = f.gi.base_core;
  std::vector<std::size_t> cdims;
  for (int x = 0; x < G.num_objects(); ++x) cdims.push_back(K.dim(x));
  f.p = std::make_unique<VBGroupoid>(detail::arrow_shape(A, cdims));
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto c = cdims[x], e = A.dimE[x];
    f.pi1_obj.push_back(hstack(Matrix::zero(e, c), Matrix::identity(e)));
    f.pi2_obj.push_back(block_diag(Matrix::identity(c), phi.obj[x]));
    f.phit_obj.push_back(f.gi.tau.obj[x] * f.pi2_obj.back());
    f.iota_obj.push_back(vstack(Matrix::zero(c, e), Matrix::identity(e)));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const auto ct = cdims[G.target(g)], cs = cdims[G.source(g)], d = A.dimGamma[g];
    Matrix pi1(d, ct + d + cs);
    pi1.set_block(0, ct, Matrix::identity(d));
    f.pi1_arr.push_back(pi1);
    f.iota_arr.push_back(pi1.transpose());
    f.pi2_arr.push_back(block_diag({Matrix::identity(ct), phi.arr[g], Matrix::identity(cs)}));
    f.phit_arr.push_back(f.gi.tau.arr[g] * f.pi2_arr.back());
  }
  return f;
}

void require_morita_identity_base(const VBMap& phi) {
  const auto& G = *phi.source->base;
  if (phi.target->base != &G || !same_map(phi.base_map, identity_map(G))) {
    throw InvalidInput("construction needs an identity base map");
  }
  if (!is_vb_morita(phi).is_vb_morita) throw InvalidInput("map is not VB-Morita");
}

/// Inverse of φ̃ restricted to the complement H of its kernel.
struct Section {
  std::vector<Subspace> k_obj, k_arr;
  std::vector<Matrix> j_obj, j_arr;
};

Section section(const Factorization& f) {
  const auto& P = *f.p;
  const auto& G = *P.base;
  Section out;
  std::vector<Subspace> h_obj;
  for (int x = 0; x < G.num_objects(); ++x) {
    out.k_obj.push_back(kernel_space(f.phit_obj[x]));
    h_obj.push_back(complement(out.k_obj.back()));
    const Matrix& bh = h_obj.back().basis();
    auto inv = inverse(f.phit_obj[x] * bh);
    if (!inv) throw std::runtime_error("kernel complement is not mapped isomorphically");
    out.j_obj.push_back(bh * *inv);
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    out.k_arr.push_back(kernel_space(f.phit_arr[g]));
    const Subspace h = intersection(detail::preimage(P.s[g], h_obj[G.source(g)]),
                                    detail::preimage(P.t[g], h_obj[G.target(g)]));
    auto inv = inverse(f.phit_arr[g] * h.basis());
    if (!inv) throw std::runtime_error("arrow complement is not mapped isomorphically");
    out.j_arr.push_back(h.basis() * *inv);
  }
  return out;
}

}  // namespace

QuasiInverse quasi_inverse(const VBMap& phi) {
  require_morita_identity_base(phi);
  const Factorization f = factor(phi);
  const Section sec = section(f);
  const auto& A = *phi.source;
  const auto& B = *phi.target;
  const auto& P = *f.p;
  const auto& G = *A.base;
  QuasiInverse out;
  out.psi = VBMap{&B, &A, identity_map(G), {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) out.psi.obj.push_back(f.pi1_obj[x] * sec.j_obj[x]);
  for (int g = 0; g < G.num_arrows(); ++g) out.psi.arr.push_back(f.pi1_arr[g] * sec.j_arr[g]);

  for (int x = 0; x < G.num_objects(); ++x) {
    out.alpha2.alpha.push_back(f.gi.universal.alpha[x] * f.pi2_obj[x] * sec.j_obj[x]);

    const ArrowId e = G.unit(x);
    const Matrix p = sec.j_obj[x] * f.phit_obj[x] * f.iota_obj[x];
    const Matrix gap = f.iota_obj[x] - p;
    const Matrix kb = sec.k_arr[e].basis();
    const Matrix core_k = kb * kernel(P.s[e] * kb);
    const Matrix y = solve_or_throw(P.t[e] * core_k, gap, "kernel is not acyclic");
    const Matrix w = P.u[x] * p + core_k * y;
    out.alpha1.alpha.push_back(f.pi1_arr[e] * w);
  }
  return out;
}

StableDecomposition stable_decompose(const VBMap& phi) {
  require_morita_identity_base(phi);
  const Factorization f = factor(phi);
  const Section sec = section(f);
  const auto& A = *phi.source;
  const auto& B = *phi.target;
  const auto& P = *f.p;
  const auto& G = *A.base;
  std::vector<Subspace> kp_obj, kp_arr;
  for (int x = 0; x < G.num_objects(); ++x) kp_obj.push_back(kernel_space(f.pi1_obj[x]));
  for (int g = 0; g < G.num_arrows(); ++g) kp_arr.push_back(kernel_space(f.pi1_arr[g]));

  StableDecomposition out;
  out.omega = std::move(sub_vb(P, sec.k_obj, sec.k_arr).vb);
  out.omega_prime = std::move(sub_vb(P, kp_obj, kp_arr).vb);
  out.lhs = std::make_unique<VBGroupoid>(direct_sum_vb(A, *out.omega_prime));
  out.rhs = std::make_unique<VBGroupoid>(direct_sum_vb(B, *out.omega));
  out.iso = VBMap{out.lhs.get(), out.rhs.get(), identity_map(G), {}, {}};
  auto assemble = [](const Matrix& iota, const Subspace& kp, const Matrix& phit, const Matrix& j,
                     const Subspace& k) {
    const Matrix into_p = hstack(iota, kp.basis());
    const Matrix down = phit * into_p;
    return vstack(down, k.coordinates(into_p - j * down));
  };
  for (int x = 0; x < G.num_objects(); ++x) {
    out.iso.obj.push_back(
        assemble(f.iota_obj[x], kp_obj[x], f.phit_obj[x], sec.j_obj[x], sec.k_obj[x]));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    out.iso.arr.push_back(
        assemble(f.iota_arr[g], kp_arr[g], f.phit_arr[g], sec.j_arr[g], sec.k_arr[g]));
  }
  return out;
}

CleavageMap cleavage_to_vbmap(const VBGroupoid& v, const Cleavage& c) {
  const Report cr = check_cleavage(v, c);
  if (!cr.ok()) throw InvalidInput("invalid cleavage: " + cr.summary());
  const auto& G = *v.base;
  const auto inv = compute_inverses(v);
  CleavageMap out;
  out.arrows = arrow_groupoid(G);
  out.along_sigma = base_change(out.arrows->sigma, v);
  out.along_tau = base_change(out.arrows->tau, v);
  const auto& GI = out.arrows->groupoid;
  out.rho = VBMap{out.along_sigma.vb.get(), out.along_tau.vb.get(), identity_map(GI), {}, {}};
  for (int g = 0; g < GI.num_objects(); ++g) out.rho.obj.push_back(v.t[g] * c.sigma[g]);
  for (int a = 0; a < GI.num_arrows(); ++a) {
    const auto& [g2, h, g1] = out.arrows->triples[a];
    const ArrowId hg = G.compose(h, g1);
    const Matrix id = Matrix::identity(v.dimGamma[hg]);
    const Matrix inner = v.mul(hg, G.inverse(g1), id, inv[g1] * c.sigma[g1] * v.s[hg]);
    out.rho.arr.push_back(v.mul(g2, h, c.sigma[g2] * v.t[hg], inner));
  }
  return out;
}

Cleavage cleavage_from_vbmap(const CleavageMap& cm) {
  const auto& v = *cm.along_sigma.map.target;
  const auto& G = *v.base;
  std::map<std::array<ArrowId, 3>, int> index;
  for (std::size_t a = 0; a < cm.arrows->triples.size(); ++a) {
    index[cm.arrows->triples[a]] = static_cast<int>(a);
  }
  Cleavage c;
  for (int g = 0; g < G.num_arrows(); ++g) {
    const ObjectId x = G.source(g);
    const int a = index.at({g, G.unit(x), G.unit(x)});
    c.sigma.push_back(cm.rho.arr[a] * v.u[x]);
  }
  return c;
}

}  // namespace vbg
