#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vbg/cochain.hpp"
#include "vbg/vbgroupoid.hpp"

namespace vbg {

/// Signs of the anchor, ρ^C and γ components of 𝒟 (the ρ^E component is +1).
struct RuthSigns {
  int anchor = 1;
  int rho_c = -1;
  int gamma = 1;
};
inline constexpr RuthSigns kRuthSigns{1, -1, 1};

/// C^p(G, E) on degrees 0..p_max (truncated) with
/// Dω(g1..gp+1) = ρ_{g1} ω(g2..) + Σ (−1)^i ω(..gi gi+1..) + (−1)^{p+1} ω(g1..gp).
CochainComplex differentiable_complex(const FiniteGroupoid& g, const TwoTermRuth& rep, int p_max);

/// Degree n holds C^n(G, E) ⊕ C^{n+1}(G, C), n = −1..p_max (truncated).
/// Throws ComplexError if 𝒟² ≠ 0.
CochainComplex ruth_complex(const TwoTermRuth& r, int p_max, RuthSigns signs = kRuthSigns);

/// Fiberwise linear cochains, one dual Fib block per nerve string.
struct LinComplex {
  const VBGroupoid* vb = nullptr;
  std::shared_ptr<const NerveStrings> strings;
  /// Per degree and string: basis of Fib as columns of ⊕ Γ_{g_i} (E_x in degree 0).
  std::vector<std::vector<Matrix>> fib;
  /// Left inverses of the `fib` bases.
  std::vector<std::vector<Matrix>> fib_coords;
  std::vector<std::vector<std::size_t>> offset;
  CochainComplex complex;  // degrees 0..p_max, truncated

  int p_max() const { return complex.last_degree(); }
  std::size_t block(int p, std::size_t k) const { return offset[p][k]; }
};
LinComplex lin_complex(const VBGroupoid& v, int p_max);

/// A subcomplex given by per-degree subspaces, with the restricted complex
/// in their bases. The top degree is cut by the conditions that do not need
/// the missing outgoing differential.
struct SubComplex {
  std::vector<Subspace> spaces;
  CochainComplex complex;
};

/// F_i: cochains ω with ω and δω vanishing on strings ending in i zero vectors.
SubComplex filtration_piece(const LinComplex& l, int i);
/// F_1, the projectable cochains. Throws ComplexError if δ does not preserve it.
SubComplex vb_subcomplex(const LinComplex& l);

/// h(φ)(v1..vp−1) = φ(v1..vp−1, σ(v1..vp−1)⁻¹); entry p maps C^p → C^{p−1}, p ≥ 1.
std::vector<Matrix> homotopy_operator(const LinComplex& l, const Cleavage& c);
/// I = id + (−1)^p (hδ − δh) on degrees 0..p_max−1.
std::vector<Matrix> filtration_retraction(const LinComplex& l, const std::vector<Matrix>& h);
/// The four-term closed form of I on degrees 1..p_max−1 (entry 0 is I^0).
std::vector<Matrix> retraction_closed_form(const LinComplex& l, const Cleavage& c);

struct CohomologyRow {
  int p = 0;
  std::size_t dim_lin = 0, dim_vb = 0, dim_h_lin = 0, dim_h_vb = 0;
};

struct LinVsVB {
  std::vector<CohomologyRow> degrees;
  bool inclusion_iso = false;
  Report report;
};
LinVsVB hvb_equals_hlin(const VBGroupoid& v, int p_max,
                        const std::optional<Cleavage>& c = std::nullopt);

struct InducedMap {
  std::vector<Matrix> lin;  // C_lin(Γ') → C_lin(Γ), per degree
  std::vector<Matrix> vb;   // restricted to the projectable subcomplexes
  QuasiIsoCertificate lin_certificate, vb_certificate;
  bool vb_iso = false;
};
/// Pullback along Φ : Γ → Γ'. Throws ComplexError if it is not a chain map.
InducedMap induced_map_vb(const VBMap& f, int p_max);

struct RuthVsDual {
  std::vector<int> degrees;  // n = −1..p_max−2
  std::vector<std::size_t> ruth_dims, vb_dims;
  Report report;
};
/// dim H^n(ruth) against dim H^{n+1}_VB of the dual of its Grothendieck construction.
RuthVsDual ruth_vs_dual_vb(const TwoTermRuth& r, int p_max);

}  // namespace vbg
