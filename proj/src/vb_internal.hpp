#pragma once

#include "vbg/vbgroupoid.hpp"

namespace vbg::detail {

/// E_x = C_x ⊕ M_x and Γ_g = C_{t g} ⊕ M_g ⊕ C_{s g}, with
/// s(c', w, c) = (c, s w), t(c', w, c) = (c', t w), u(c, e) = (c, u e, c)
/// and m((c'', w', c'), (c', w, c)) = (c'', w'w, c).
VBGroupoid arrow_shape(const VBGroupoid& middle, const std::vector<std::size_t>& cdims);

/// {v : m v ∈ s}.
Subspace preimage(const Matrix& m, const Subspace& s);

}  // namespace vbg::detail
