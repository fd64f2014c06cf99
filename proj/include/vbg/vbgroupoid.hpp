#pragma once

#include <memory>
#include <vector>

#include "vbg/groupoid.hpp"
#include "vbg/ruth.hpp"
#include "vbg/subspace.hpp"

namespace vbg {

/// Linear groupoid Γ ⇉ E over a finite groupoid, stored fiberwise.
///
/// m(g, h) is a full matrix on Γ_g ⊕ Γ_h; only its restriction to the
/// fibered product Fib(g, h) = {(v, w) : s v = t w} carries meaning.
struct VBGroupoid {
  const FiniteGroupoid* base = nullptr;
  std::vector<std::size_t> dimE;      // per object
  std::vector<std::size_t> dimGamma;  // per arrow
  std::vector<Matrix> s, t;           // per arrow: Γ_g -> E_{s g}, E_{t g}
  std::vector<Matrix> u;              // per object: E_x -> Γ_{unit x}
  std::vector<Matrix> m_table;        // arrows*arrows

  const Matrix& m(ArrowId g, ArrowId h) const { return m_table[g * base->num_arrows() + h]; }
  Matrix& m(ArrowId g, ArrowId h) { return m_table[g * base->num_arrows() + h]; }
  /// Columnwise product m(v, w) of arrows over g and h.
  Matrix mul(ArrowId g, ArrowId h, const Matrix& v, const Matrix& w) const;
  std::size_t unit_dim(ObjectId x) const { return dimGamma[base->unit(x)]; }
};

void check_vb_shapes(const VBGroupoid& v);
/// Basis of Fib(g, h) as columns of Γ_g ⊕ Γ_h.
Matrix fib_basis(const VBGroupoid& v, ArrowId g, ArrowId h);
Report check_vbgroupoid(const VBGroupoid& v);
/// Per arrow the linear inversion Γ_g -> Γ_{g⁻¹}; throws InvalidInput if
/// some arrow has no inverse.
std::vector<Matrix> compute_inverses(const VBGroupoid& v);
VBGroupoid zero_vb(const FiniteGroupoid& g);

struct Cleavage {
  std::vector<Matrix> sigma;  // per arrow: E_{s g} -> Γ_g
};
Report check_cleavage(const VBGroupoid& v, const Cleavage& c);
/// Canonical right inverse of each s_g, replaced by u at units.
Cleavage choose_cleavage(const VBGroupoid& v);

/// C_x = ker(s) at unit(x), with ∂ = t restricted, in kernel coordinates.
struct CoreData {
  std::vector<Matrix> basis;   // columns in Γ_{unit x}
  std::vector<Matrix> anchor;  // E_x x C_x
  std::size_t dim(ObjectId x) const { return basis[x].cols(); }
  /// Core coordinates of columns lying in C_x.
  Matrix coords(ObjectId x, const Matrix& vectors) const;
};
CoreData core(const VBGroupoid& v);

struct VBMap {
  const VBGroupoid* source = nullptr;
  const VBGroupoid* target = nullptr;
  GroupoidMap base_map;
  std::vector<Matrix> obj;  // per source object: E_x -> E'_{φ x}
  std::vector<Matrix> arr;  // per source arrow: Γ_g -> Γ'_{φ g}
};

Report check_vbmap(const VBMap& f);
VBMap identity_vbmap(const VBGroupoid& v);
VBMap zero_vbmap(const VBGroupoid& from, const VBGroupoid& to);
/// b ∘ a.
VBMap compose_vbmaps(const VBMap& b, const VBMap& a);
/// Every component square and invertible.
bool vbmap_invertible(const VBMap& f);
bool same_vbmap_data(const VBMap& a, const VBMap& b);
bool same_vb(const VBGroupoid& a, const VBGroupoid& b);

/// Γ_g = C_{t g} ⊕ E_{s g}; s = [0 I], t = [∂ ρ^E_g], u = [0; I] and
/// m((c1,e1),(c2,e2)) = (c1 + ρ^C_g c2 - γ_{g,h} e2, e2).
VBGroupoid grothendieck(const TwoTermRuth& r);

struct SplitResult {
  Cleavage cleavage;
  CoreData core;
  std::unique_ptr<TwoTermRuth> ruth;
  std::unique_ptr<VBGroupoid> model;  // grothendieck(*ruth)
  VBMap iso;                          // source -> *model
};
SplitResult split(const VBGroupoid& v, const Cleavage& c);

/// (c, e) ↦ (Φ_C c + μ_g e, Φ_E e).
VBMap grothendieck_map(const RuthMorphism& m, const VBGroupoid& source, const VBGroupoid& target);
/// Inverse of grothendieck_map, read through both splittings.
RuthMorphism split_map(const VBMap& f, const SplitResult& source, const SplitResult& target);

struct BaseChange {
  std::unique_ptr<VBGroupoid> vb;
  VBMap map;  // fiberwise identity onto the input
};
BaseChange base_change(const GroupoidMap& f, const VBGroupoid& v);

struct VBMoritaCertificate {
  bool is_vb_morita = false;
  MoritaCertificate base;
  std::vector<QuasiIsoCertificate> fibers;  // per source object
};
/// Base functor Morita and every core-complex chain map a quasi-isomorphism.
VBMoritaCertificate is_vb_morita(const VBMap& f);

VBGroupoid dual_vb(const VBGroupoid& v);

struct DualMap {
  std::unique_ptr<VBGroupoid> dual_source, dual_target;
  VBMap map;  // dual_target -> dual_source
};
DualMap dual_vbmap(const VBMap& f);

/// Γ_g = E_{t g} ⊕ E_{s g}: s, t the projections, m((e3,e2),(e2,e1)) = (e3,e1).
VBGroupoid acyclic_vb(const FiniteGroupoid& g, const std::vector<std::size_t>& dims);
bool is_acyclic(const VBGroupoid& v);

VBGroupoid direct_sum_vb(const VBGroupoid& a, const VBGroupoid& b);

/// Restriction to subspaces closed under the structure maps.
struct SubVB {
  std::unique_ptr<VBGroupoid> vb;
  VBMap inclusion;
};
SubVB sub_vb(const VBGroupoid& v, const std::vector<Subspace>& objects,
             const std::vector<Subspace>& arrows);

/// Natural isomorphism between VB-maps φ, ψ : Γ' -> Γ over an identity base.
struct VBMapIso {
  std::vector<Matrix> alpha;  // per object: E'_x -> Γ_{unit x}
};
Report check_vbmap_iso(const VBMapIso& a, const VBMap& phi, const VBMap& psi);

struct ArrowVB {
  std::unique_ptr<VBGroupoid> vb;  // E^I = C ⊕ E, Γ^I_g = C_{t g} ⊕ Γ_g ⊕ C_{s g}
  CoreData base_core;
  VBMap sigma, tau;  // Γ^I -> Γ
  VBMap mu;          // Γ -> Γ^I
  VBMapIso universal;  // σ ≅ τ, α(c, e) = c + u(e)
};
ArrowVB arrow_vb(const VBGroupoid& v);

/// φ^α_0 = φ_0 + ∂α and φ^α(v) = W(t v) φ(v) W(s v)⁻¹ with W = α + u φ_0.
/// `alpha` is given per object in core coordinates of the target.
VBMap twist(const VBMap& phi, const std::vector<Matrix>& alpha);
/// The isomorphism φ ≅ twist(φ, α).
VBMapIso twist_iso(const VBMap& phi, const std::vector<Matrix>& alpha);

struct QuasiInverse {
  VBMap psi;        // Γ -> Γ'
  VBMapIso alpha1;  // ψ∘φ ≅ id
  VBMapIso alpha2;  // φ∘ψ ≅ id
};
QuasiInverse quasi_inverse(const VBMap& phi);

struct StableDecomposition {
  std::unique_ptr<VBGroupoid> omega, omega_prime;
  std::unique_ptr<VBGroupoid> lhs, rhs;  // Γ'⊕Ω', Γ⊕Ω
  VBMap iso;                             // lhs -> rhs
};
StableDecomposition stable_decompose(const VBMap& phi);

struct CleavageMap {
  std::unique_ptr<ArrowGroupoid> arrows;
  BaseChange along_sigma, along_tau;
  VBMap rho;  // σ*Γ -> τ*Γ over G^I
};
CleavageMap cleavage_to_vbmap(const VBGroupoid& v, const Cleavage& c);
/// Σ(g, e) = ρ((g, 1_x, 1_x), u e).
Cleavage cleavage_from_vbmap(const CleavageMap& cm);

}  // namespace vbg
