#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "vbg/vbgroupoid.hpp"

namespace vbg {

class DescentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// λ_i(x) per object x of the base and cover index i.
struct PartitionOfUnity {
  std::vector<std::vector<Rational>> weight;  // [x][i]
  const Rational& operator()(int i, ObjectId x) const { return weight[x][i]; }
};
/// λ_i(x) = 1 / #{j : x ∈ U_j} on the sets containing x.
PartitionOfUnity uniform_partition(const CechGroupoid& cech);
/// All weight at the least cover index containing x.
PartitionOfUnity point_partition(const CechGroupoid& cech);
/// Nonnegative, zero off U_i, summing to 1 at every object.
Report check_partition(const CechGroupoid& cech, const PartitionOfUnity& l);

/// π_U*Φ between the pullbacks `source` and `target` of Φ's ends.
VBMap pullback_map(const CechGroupoid& cech, const VBMap& phi, const VBGroupoid& source,
                   const VBGroupoid& target);

struct DescendedMap {
  std::vector<Matrix> beta;   // per Čech kernel arrow (1_x, j, i): E_x -> C'_x
  std::vector<Matrix> alpha;  // per Čech object (x, i): E_x -> C'_x
  VBMap twisted;              // ψ^α, killing the kernel arrows
  VBMap phi;                  // Γ -> Γ'
  VBMap pulled;               // π_U*φ, equal to ψ^α
  VBMapIso iso;               // ψ ≅ π_U*φ
};
/// ψ : π_U*Γ → π_U*Γ' over the identity of the Čech groupoid.
/// Throws InvalidInput if ψ's ends are not the pullbacks of Γ and Γ', and
/// DescentError if an internal identity (cocycle law, descent) fails.
DescendedMap descend_map(const CechGroupoid& cech, const VBMap& psi, const VBGroupoid& gamma,
                         const VBGroupoid& gamma2, const PartitionOfUnity& l);

/// π_U*Σ: the lift over (g, j, i) is Σ_g.
Cleavage pullback_cleavage(const CechGroupoid& cech, const Cleavage& c);

/// ρ_k = t_k Σ_k for the kernel arrow (1_x, j, i).
Matrix kernel_action(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c,
                     ObjectId x, int j, int i);
/// Every ρ_k on kernel arrows invertible.
Report check_kernel_invertible(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c);
/// Σ_{kj}(ρ_{ji} e) Σ_{ji}(e) = Σ_{ki}(e) on all kernel triples.
Report check_u_flat(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c);

/// Σ'_{ji} = Σ_{ji} for j ≥ i and Σ_{ij}⁻¹ for j < i; other arrows untouched.
/// Throws InvalidInput if a kernel action is singular.
Cleavage symmetrize_cleavage(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c);
/// Σ'_{ji}(e) = Σ_r λ_r(x) Σ_{jr}(ρ_{ri} e) Σ_{ri}(e) on kernel arrows.
/// Throws DescentError if the result is not U-flat.
Cleavage flatten_cleavage(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c,
                          const PartitionOfUnity& l);

struct InvertiblePadding {
  std::unique_ptr<VBGroupoid> omega;   // acyclic
  std::unique_ptr<VBGroupoid> padded;  // v ⊕ Ω
  Cleavage cleavage;                   // on *padded, invertible on kernel arrows
  VBMap projection;                    // *padded -> v
};
/// Ω has rank N_o − rk E on every object of a component o, N_o the largest
/// rank there; kernel lifts are corrected by core elements until ρ is invertible.
InvertiblePadding make_invertible(const VBGroupoid& v, const CechGroupoid& cech);

struct DescendedObject {
  GroupoidMap section;                    // x ↦ (x, least index)
  std::unique_ptr<VBGroupoid> descended;  // over the base
  BaseChange pulled;                      // π_U* of *descended
  VBMap comparison;                       // *pulled.vb -> v
};
/// Throws DescentError unless c is U-flat with invertible kernel actions.
DescendedObject descend_object(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c);

struct Descent {
  InvertiblePadding padding;
  Cleavage flat;
  DescendedObject object;  // comparison lands in *padding.padded
};
/// make_invertible, symmetrize, flatten with `l`, descend.
Descent descend(const VBGroupoid& v, const CechGroupoid& cech, const PartitionOfUnity& l);

}  // namespace vbg
