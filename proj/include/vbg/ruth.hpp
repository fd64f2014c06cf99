#pragma once

#include <memory>
#include <vector>

#include "vbg/cochain.hpp"
#include "vbg/groupoid.hpp"
#include "vbg/matrix.hpp"

namespace vbg {

/// Two-term representation up to homotopy C --∂--> E over a finite groupoid.
///
/// Stored unital: ρ at units is the identity and γ vanishes when either
/// argument is a unit.
struct TwoTermRuth {
  const FiniteGroupoid* base = nullptr;
  std::vector<std::size_t> dimE, dimC;  // per object
  std::vector<Matrix> anchor;           // ∂_x : C_x -> E_x
  std::vector<Matrix> rhoE, rhoC;       // per arrow g : s(g) -> t(g)
  std::vector<Matrix> gamma_table;      // arrows*arrows; E_{s(h)} -> C_{t(g)}

  const Matrix& gamma(ArrowId g, ArrowId h) const {
    return gamma_table[g * base->num_arrows() + h];
  }
  Matrix& gamma(ArrowId g, ArrowId h) { return gamma_table[g * base->num_arrows() + h]; }

  /// Data with the given ranks: ∂ = 0, ρ = 0 off units, γ = 0.
  static TwoTermRuth zeros(const FiniteGroupoid& g, std::vector<std::size_t> dimE,
                           std::vector<std::size_t> dimC);
};

/// The triple (Φ_E, Φ_C, μ) between two ruths over the same base.
struct RuthMorphism {
  const TwoTermRuth* source = nullptr;
  const TwoTermRuth* target = nullptr;
  std::vector<Matrix> PhiE, PhiC;  // per object
  std::vector<Matrix> mu;          // per arrow: E_{s(g)} -> C'_{t(g)}
};

/// Throws DimensionError unless every block has the shape the ranks dictate.
void check_ruth_shapes(const TwoTermRuth& r);
void check_morphism_shapes(const RuthMorphism& m);

/// Unitality and the four structure equations, with witnesses.
Report check_ruth(const TwoTermRuth& r);
/// Unitality of μ and the four morphism equations. Throws InvalidInput if an
/// endpoint is not a valid ruth.
Report check_ruth_morphism(const RuthMorphism& m);

RuthMorphism identity_morphism(const TwoTermRuth& r);
RuthMorphism zero_morphism(const TwoTermRuth& from, const TwoTermRuth& to);
/// m2 ∘ m1: μ″_g = Φ′_C μ_g + μ′_g Φ_E.
RuthMorphism compose_ruth_morphisms(const RuthMorphism& m2, const RuthMorphism& m1);
bool same_morphism_data(const RuthMorphism& a, const RuthMorphism& b);

struct RuthQuasiIsoCertificate {
  bool is_quasi_iso = false;
  std::vector<QuasiIsoCertificate> per_object;
};

/// Core complex C_x -> E_x in degrees -1, 0.
CochainComplex core_complex(const TwoTermRuth& r, ObjectId x);
RuthQuasiIsoCertificate is_quasi_iso(const RuthMorphism& m);

TwoTermRuth direct_sum(const TwoTermRuth& a, const TwoTermRuth& b);
TwoTermRuth pullback_ruth(const GroupoidMap& f, const TwoTermRuth& r);

struct GaugeResult {
  std::unique_ptr<TwoTermRuth> ruth;
  RuthMorphism morphism;  // from the input ruth to *ruth
};

/// Transports r along invertible (Φ_E, Φ_C) and μ (zero at units).
GaugeResult gauge_transform(const TwoTermRuth& r, const std::vector<Matrix>& PhiE,
                            const std::vector<Matrix>& PhiC, const std::vector<Matrix>& mu);

/// Sign choices for the dual: ∂″ = s_anchor ∂ᵀ, γ″_{g,h} = s_gamma (γ_{h⁻¹,g⁻¹})ᵀ.
struct DualSigns {
  int anchor = 1;
  int gamma = 1;
};
inline constexpr DualSigns kDualSigns{1, 1};

/// E″ = C*, C″ = E*, ρ″^E_g = (ρ^C_{g⁻¹})ᵀ, ρ″^C_g = (ρ^E_{g⁻¹})ᵀ.
TwoTermRuth dual_ruth(const TwoTermRuth& r, DualSigns signs = kDualSigns);
/// Dual of m : r -> r′, as a morphism dual(r′) -> dual(r):
/// Φ*_E = Φ_Cᵀ, Φ*_C = Φ_Eᵀ, μ*_g = -(μ_{g⁻¹})ᵀ.
RuthMorphism dual_ruth_morphism(const RuthMorphism& m, const TwoTermRuth& dual_target,
                                const TwoTermRuth& dual_source);

bool same_ruth(const TwoTermRuth& a, const TwoTermRuth& b);

namespace fixtures {
/// E = Q^k with every arrow acting by the identity, C = 0.
TwoTermRuth trivial_rep(const FiniteGroupoid& g, std::size_t k = 1);
/// One-object Z2 acting on Q by -1.
TwoTermRuth sign_rep(const FiniteGroupoid& z2);
/// E = C = Q^k, ∂ = id, trivial actions.
TwoTermRuth acyclic_ruth(const FiniteGroupoid& g, std::size_t k = 1);
TwoTermRuth zero_ruth(const FiniteGroupoid& g);
}  // namespace fixtures

}  // namespace vbg
