#include "vbg/cohomology.hpp"

#include <numeric>

namespace vbg {

namespace {

Rational sign(int k) { return k % 2 == 0 ? 1 : -1; }

/// Offsets of the per-string blocks of C^q(G, B), B of rank dims[x] at x.
struct Layout {
  std::vector<std::vector<std::size_t>> offset;
  std::vector<std::size_t> total;
};

Layout layout(const NerveStrings& n, const std::vector<std::size_t>& dims) {
  Layout l;
  for (int q = 0; q <= n.p_max(); ++q) {
    std::vector<std::size_t> off;
    std::size_t at = 0;
    for (const auto& c : n.degree(q)) {
      off.push_back(at);
      at += dims[c.object];
    }
    l.offset.push_back(std::move(off));
    l.total.push_back(at);
  }
  return l;
}

/// D_ρ : C^q → C^{q+1}.
Matrix quasi_action_differential(const NerveStrings& n, const Layout& l,
                                 const std::vector<std::size_t>& dims,
                                 const std::vector<Matrix>& rho, int q) {
  Matrix d(l.total[q + 1], l.total[q]);
  const auto& up = n.degree(q + 1);
  for (std::size_t k = 0; k < up.size(); ++k) {
    const Chain& c = up[k];
    for (int i = 0; i <= q + 1; ++i) {
      const Chain f = n.face(c, i);
      const std::size_t col = l.offset[q][n.index_of(f)];
      const Matrix blk = i == 0 ? rho[c.arrows[0]] : Matrix::identity(dims[f.object]);
      d.add_block(l.offset[q + 1][k], col, blk, sign(i));
    }
  }
  return d;
}

/// Pointwise ∂ : C^q(C) → C^q(E).
Matrix pointwise(const NerveStrings& n, const Layout& to, const Layout& from,
                 const std::vector<Matrix>& anchor, int q) {
  Matrix d(to.total[q], from.total[q]);
  const auto& cs = n.degree(q);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    d.set_block(to.offset[q][k], from.offset[q][k], anchor[cs[k].object]);
  }
  return d;
}

/// (γ⋆ω)(g1..gq+2) = γ_{g1,g2} ω(g3..gq+2) : C^q(E) → C^{q+2}(C).
Matrix gamma_insertion(const NerveStrings& n, const Layout& to, const Layout& from,
                       const TwoTermRuth& r, int q) {
  Matrix d(to.total[q + 2], from.total[q]);
  const auto& up = n.degree(q + 2);
  for (std::size_t k = 0; k < up.size(); ++k) {
    const Chain& c = up[k];
    const Chain tail = n.face(n.face(c, 0), 0);
    d.set_block(to.offset[q + 2][k], from.offset[q][n.index_of(tail)],
                r.gamma(c.arrows[0], c.arrows[1]));
  }
  return d;
}

void require_valid_ruth(const TwoTermRuth& r) {
  const Report rep = check_ruth(r);
  if (!rep.ok()) throw InvalidInput("invalid ruth: " + rep.summary());
}

Matrix left_inverse(const Matrix& b) {
  if (b.cols() == 0) return Matrix(0, b.rows());
  auto ri = right_inverse(b.transpose());
  if (!ri) throw std::logic_error("basis without full column rank");
  return ri->transpose();
}

/// An element of Fib over a string, given linearly in some coordinates:
/// slots[i] maps them to Γ_{arrows[i]} (to E_object in degree 0).
struct Elem {
  Chain chain;
  std::vector<Matrix> slots;
};

class FibCalculus {
 public:
  explicit FibCalculus(const LinComplex& l) : l_(l), v_(*l.vb), g_(*v_.base) {}

  Elem basis_elem(int p, std::size_t k) const {
    Elem e{l_.strings->degree(p)[k], {}};
    const Matrix& b = l_.fib[p][k];
    if (p == 0) {
      e.slots.push_back(b);
      return e;
    }
    std::size_t at = 0;
    for (ArrowId a : e.chain.arrows) {
      e.slots.push_back(b.row_range(at, at + v_.dimGamma[a]));
      at += v_.dimGamma[a];
    }
    return e;
  }

  Elem face(const Elem& e, int i) const {
    const int p = static_cast<int>(e.chain.degree());
    Elem out{l_.strings->face(e.chain, i), {}};
    const auto& arr = e.chain.arrows;
    if (p == 1) {
      out.slots.push_back((i == 0 ? v_.s[arr[0]] : v_.t[arr[0]]) * e.slots[0]);
      return out;
    }
    for (int j = 0; j < p; ++j) {
      if (i == 0 && j == 0) continue;
      if (i == p && j == p - 1) continue;
      if (i > 0 && i < p && j == i - 1) {
        out.slots.push_back(v_.mul(arr[j], arr[j + 1], e.slots[j], e.slots[j + 1]));
        ++j;
        continue;
      }
      out.slots.push_back(e.slots[j]);
    }
    return out;
  }

  /// Coordinates in the Fib basis of the element's string.
  Matrix coords(const Elem& e) const {
    const int p = static_cast<int>(e.chain.degree());
    const std::size_t k = l_.strings->index_of(e.chain);
    const std::size_t n = e.slots.empty() ? 0 : e.slots[0].cols();
    return l_.fib_coords[p][k] * vstack(e.slots, n);
  }

  /// Base arrow and vector of σ(v1..vp)⁻¹.
  std::pair<ArrowId, Matrix> sigma_inverse(const Elem& e, const Cleavage& c,
                                           const std::vector<Matrix>& inv) const {
    const auto& arr = e.chain.arrows;
    ArrowId k = g_.unit(e.chain.object);
    Matrix src = e.slots.empty() ? Matrix() : e.slots.back();
    if (!arr.empty()) {
      k = arr[0];
      for (std::size_t j = 1; j < arr.size(); ++j) k = g_.compose(k, arr[j]);
      src = v_.s[arr.back()] * e.slots.back();
    }
    return {g_.inverse(k), inv[k] * c.sigma[k] * src};
  }

  Elem append(const Elem& e, ArrowId a, const Matrix& w) const {
    Elem out = e;
    if (out.chain.arrows.empty()) out.slots.clear();
    out.chain.arrows.push_back(a);
    out.slots.push_back(w);
    return out;
  }

  /// Replaces the last vector v_p by v_p·w over the last arrow times a.
  Elem multiply_last(const Elem& e, ArrowId a, const Matrix& w) const {
    Elem out = e;
    const ArrowId last = out.chain.arrows.back();
    out.slots.back() = v_.mul(last, a, out.slots.back(), w);
    out.chain.arrows.back() = g_.compose(last, a);
    if (out.chain.arrows.size() == 1) out.chain.object = g_.target(out.chain.arrows[0]);
    return out;
  }

  const VBGroupoid& vb() const { return v_; }

 private:
  const LinComplex& l_;
  const VBGroupoid& v_;
  const FiniteGroupoid& g_;
};

std::size_t dim_of(const LinComplex& l, int p) { return l.complex.dim(p); }

Matrix restrict(const Matrix& m, const Subspace& from, const Subspace& to, const char* what) {
  try {
    return to.coordinates(m * from.basis());
  } catch (const std::invalid_argument&) {
    throw ComplexError(what);
  }
}

}  // namespace

CochainComplex differentiable_complex(const FiniteGroupoid& g, const TwoTermRuth& rep,
                                      int p_max) {
  if (rep.base != &g) throw InvalidInput("representation lives over another groupoid");
  require_valid_ruth(rep);
  for (auto d : rep.dimC) {
    if (d != 0) throw InvalidInput("representation must have C = 0");
  }
  const NerveStrings n(g, p_max);
  const Layout l = layout(n, rep.dimE);
  CochainComplex out;
  out.first_degree = 0;
  out.truncated = true;
  out.dims = l.total;
  for (int q = 0; q < p_max; ++q) {
    out.differentials.push_back(quasi_action_differential(n, l, rep.dimE, rep.rhoE, q));
  }
  validate_complex(out);
  return out;
}

CochainComplex ruth_complex(const TwoTermRuth& r, int p_max, RuthSigns signs) {
  require_valid_ruth(r);
  const NerveStrings n(*r.base, p_max + 1);
  const Layout le = layout(n, r.dimE);
  const Layout lc = layout(n, r.dimC);
  auto e_dim = [&](int q) -> std::size_t { return q < 0 ? 0 : le.total[q]; };
  CochainComplex out;
  out.first_degree = -1;
  out.truncated = true;
  for (int d = -1; d <= p_max; ++d) out.dims.push_back(e_dim(d) + lc.total[d + 1]);
  for (int d = -1; d < p_max; ++d) {
    const std::size_t eo = e_dim(d + 1);
    Matrix m(out.dim(d + 1), out.dim(d));
    const std::size_t ei = e_dim(d);
    if (d >= 0) {
      m.set_block(0, 0, quasi_action_differential(n, le, r.dimE, r.rhoE, d));
      m.add_block(eo, 0, gamma_insertion(n, lc, le, r, d), signs.gamma);
    }
    m.add_block(0, ei, pointwise(n, le, lc, r.anchor, d + 1), signs.anchor);
    m.add_block(eo, ei, quasi_action_differential(n, lc, r.dimC, r.rhoC, d + 1), signs.rho_c);
    out.differentials.push_back(std::move(m));
  }
  validate_complex(out);
  return out;
}

LinComplex lin_complex(const VBGroupoid& v, int p_max) {
  const Report rep = check_vbgroupoid(v);
  if (!rep.ok()) throw InvalidInput("invalid VB-groupoid: " + rep.summary());
  const auto& G = *v.base;
  LinComplex l;
  l.vb = &v;
  l.strings = std::make_shared<NerveStrings>(G, p_max);
  l.complex.first_degree = 0;
  l.complex.truncated = true;
  for (int p = 0; p <= p_max; ++p) {
    std::vector<Matrix> bases, lefts;
    std::vector<std::size_t> off;
    std::size_t at = 0;
    for (const Chain& c : l.strings->degree(p)) {
      Matrix b;
      if (p == 0) {
        b = Matrix::identity(v.dimE[c.object]);
      } else {
        std::size_t amb = 0;
        for (ArrowId a : c.arrows) amb += v.dimGamma[a];
        Matrix cons(0, amb);
        std::size_t col = 0;
        for (std::size_t j = 0; j + 1 < c.arrows.size(); ++j) {
          const ArrowId a = c.arrows[j], b2 = c.arrows[j + 1];
          Matrix row(v.dimE[G.source(a)], amb);
          row.set_block(0, col, v.s[a]);
          row.add_block(0, col + v.dimGamma[a], v.t[b2], -1);
          cons = vstack(cons, row);
          col += v.dimGamma[a];
        }
        b = cons.rows() == 0 ? Matrix::identity(amb) : kernel(cons);
      }
      off.push_back(at);
      at += b.cols();
      lefts.push_back(left_inverse(b));
      bases.push_back(std::move(b));
    }
    l.fib.push_back(std::move(bases));
    l.fib_coords.push_back(std::move(lefts));
    l.offset.push_back(std::move(off));
    l.complex.dims.push_back(at);
  }
  const FibCalculus calc(l);
  for (int p = 0; p < p_max; ++p) {
    Matrix d(l.complex.dims[p + 1], l.complex.dims[p]);
    const auto& up = l.strings->degree(p + 1);
    for (std::size_t k = 0; k < up.size(); ++k) {
      const Elem e = calc.basis_elem(p + 1, k);
      for (int i = 0; i <= p + 1; ++i) {
        const Elem f = calc.face(e, i);
        const Matrix fm = calc.coords(f);
        d.add_block(l.offset[p + 1][k], l.offset[p][l.strings->index_of(f.chain)],
                    fm.transpose(), sign(i));
      }
    }
    l.complex.differentials.push_back(std::move(d));
  }
  validate_complex(l.complex);
  return l;
}

namespace {

/// Rows Zᵀ per string, Z the Fib coordinates of sequences ending in i zeros.
Matrix vanishing_constraints(const LinComplex& l, int p, int i) {
  const std::size_t n = dim_of(l, p);
  if (p < i || i <= 0) return Matrix(0, n);
  const auto& v = *l.vb;
  std::vector<Matrix> rows;
  const auto& cs = l.strings->degree(p);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const auto& arr = cs[k].arrows;
    std::size_t amb = 0, tail_start = 0;
    for (std::size_t j = 0; j < arr.size(); ++j) {
      if (static_cast<int>(j) == p - i) tail_start = amb;
      amb += v.dimGamma[arr[j]];
    }
    Matrix sel(amb - tail_start, amb);
    sel.set_block(0, tail_start, Matrix::identity(amb - tail_start));
    const Matrix z = kernel(sel * l.fib[p][k]);
    if (z.cols() == 0) continue;
    Matrix r(z.cols(), n);
    r.set_block(0, l.offset[p][k], z.transpose());
    rows.push_back(std::move(r));
  }
  return vstack(rows, n);
}

}  // namespace

SubComplex filtration_piece(const LinComplex& l, int i) {
  const int top = l.p_max();
  SubComplex out;
  for (int p = 0; p <= top; ++p) {
    Matrix cons = vanishing_constraints(l, p, i);
    if (p < top) cons = vstack(cons, vanishing_constraints(l, p + 1, i) * l.complex.d(p));
    out.spaces.push_back(kernel_space(cons));
  }
  out.complex.first_degree = 0;
  out.complex.truncated = true;
  for (const auto& s : out.spaces) out.complex.dims.push_back(s.dim());
  for (int p = 0; p < top; ++p) {
    out.complex.differentials.push_back(restrict(l.complex.d(p), out.spaces[p],
                                                 out.spaces[p + 1],
                                                 "differential leaves the subcomplex"));
  }
  return out;
}

SubComplex vb_subcomplex(const LinComplex& l) { return filtration_piece(l, 1); }

std::vector<Matrix> homotopy_operator(const LinComplex& l, const Cleavage& c) {
  const Report cr = check_cleavage(*l.vb, c);
  if (!cr.ok()) throw InvalidInput("invalid cleavage: " + cr.summary());
  const auto inv = compute_inverses(*l.vb);
  const FibCalculus calc(l);
  std::vector<Matrix> h{Matrix(0, dim_of(l, 0))};
  for (int p = 1; p <= l.p_max(); ++p) {
    Matrix m(dim_of(l, p - 1), dim_of(l, p));
    const auto& cs = l.strings->degree(p - 1);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Elem e = calc.basis_elem(p - 1, k);
      const auto [a, w] = calc.sigma_inverse(e, c, inv);
      const Elem f = calc.append(e, a, w);
      m.set_block(l.offset[p - 1][k], l.offset[p][l.strings->index_of(f.chain)],
                  calc.coords(f).transpose());
    }
    h.push_back(std::move(m));
  }
  return h;
}

std::vector<Matrix> filtration_retraction(const LinComplex& l, const std::vector<Matrix>& h) {
  std::vector<Matrix> out;
  for (int p = 0; p < l.p_max(); ++p) {
    Matrix hd = h[p + 1] * l.complex.d(p);
    Matrix dh = p == 0 ? Matrix(dim_of(l, 0), dim_of(l, 0)) : l.complex.d(p - 1) * h[p];
    out.push_back(Matrix::identity(dim_of(l, p)) + sign(p) * (hd - dh));
  }
  return out;
}

std::vector<Matrix> retraction_closed_form(const LinComplex& l, const Cleavage& c) {
  const auto inv = compute_inverses(*l.vb);
  const FibCalculus calc(l);
  std::vector<Matrix> out{Matrix::identity(dim_of(l, 0))};
  for (int p = 1; p < l.p_max(); ++p) {
    Matrix m(dim_of(l, p), dim_of(l, p));
    auto place = [&](std::size_t row, const Elem& f, const Rational& s) {
      m.add_block(row, l.offset[p][l.strings->index_of(f.chain)], calc.coords(f).transpose(), s);
    };
    const auto& cs = l.strings->degree(p);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::size_t row = l.offset[p][k];
      const Elem e = calc.basis_elem(p, k);
      const auto [a, w] = calc.sigma_inverse(e, c, inv);
      place(row, calc.multiply_last(e, a, w), 1);
      place(row, calc.append(calc.face(e, 0), a, w), sign(p));
      const Elem e3 = calc.face(e, p);
      const auto [a3, w3] = calc.sigma_inverse(e3, c, inv);
      place(row, calc.append(e3, a3, w3), -1);
      const Elem e4 = calc.face(e, 0);
      const auto [a4, w4] = calc.sigma_inverse(e4, c, inv);
      place(row, calc.append(e4, a4, w4), -sign(p));
    }
    out.push_back(std::move(m));
  }
  return out;
}

LinVsVB hvb_equals_hlin(const VBGroupoid& v, int p_max, const std::optional<Cleavage>& c) {
  const Cleavage cl = c ? *c : choose_cleavage(v);
  const LinComplex l = lin_complex(v, p_max);
  const SubComplex vb = vb_subcomplex(l);
  LinVsVB out;

  std::vector<Matrix> inc;
  for (const auto& s : vb.spaces) inc.push_back(s.basis());
  const auto cert = chain_map_is_quasi_iso(vb.complex, l.complex, inc);
  out.inclusion_iso = cert.is_quasi_iso;
  if (!cert.is_quasi_iso) out.report.add("inclusion not a quasi-isomorphism");
  const auto hl = complex_cohomology(l.complex);
  const auto hv = complex_cohomology(vb.complex);
  for (std::size_t k = 0; k < hl.size(); ++k) {
    const int p = hl[k].degree;
    out.degrees.push_back({p, l.complex.dim(p), vb.complex.dim(p), hl[k].dim, hv[k].dim});
    if (hl[k].dim != hv[k].dim) out.report.add("dimension", {"H^" + std::to_string(p)});
  }

  std::vector<SubComplex> f;
  for (int i = 1; i <= p_max; ++i) f.push_back(i == 1 ? vb : filtration_piece(l, i));
  for (int i = 1; i < p_max; ++i) {
    const auto& lo = f[i - 1];
    const auto& hi = f[i];
    std::vector<Matrix> incl;
    bool nested = true;
    for (int p = 0; p <= p_max; ++p) {
      nested = nested && hi.spaces[p].contains(lo.spaces[p].basis());
      incl.push_back(nested ? hi.spaces[p].coordinates(lo.spaces[p].basis()) : Matrix());
    }
    if (!nested) {
      out.report.add("filtration not increasing", {"F" + std::to_string(i)});
      continue;
    }
    if (!chain_map_is_quasi_iso(lo.complex, hi.complex, incl).is_quasi_iso) {
      out.report.add("filtration step not a quasi-isomorphism", {"F" + std::to_string(i)});
    }
  }

  const auto h = homotopy_operator(l, cl);
  const auto ret = filtration_retraction(l, h);
  const auto closed = retraction_closed_form(l, cl);
  for (int p = 0; p < p_max; ++p) {
    const std::string deg = std::to_string(p);
    if (!(ret[p] == closed[p])) out.report.add("retraction closed form", {deg});
    if (p + 1 < p_max && !(l.complex.d(p) * ret[p] == ret[p + 1] * l.complex.d(p))) {
      out.report.add("retraction not a chain map", {deg});
    }
    for (int i = 1; i < p_max; ++i) {
      if (!f[i - 1].spaces[p].contains(ret[p] * f[i].spaces[p].basis())) {
        out.report.add("retraction does not lower the filtration",
                       {"F" + std::to_string(i + 1), deg});
      }
    }
  }
  return out;
}

InducedMap induced_map_vb(const VBMap& f, int p_max) {
  const Report rep = check_vbmap(f);
  if (!rep.ok()) throw InvalidInput("invalid VB-map: " + rep.summary());
  const LinComplex la = lin_complex(*f.source, p_max);
  const LinComplex lb = lin_complex(*f.target, p_max);
  const FibCalculus calc(la);
  InducedMap out;
  for (int p = 0; p <= p_max; ++p) {
    Matrix m(dim_of(la, p), dim_of(lb, p));
    const auto& cs = la.strings->degree(p);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const Elem e = calc.basis_elem(p, k);
      Chain image{f.base_map.obj(e.chain.object), {}};
      std::vector<Matrix> slots;
      if (p == 0) {
        slots.push_back(f.obj[e.chain.object] * e.slots[0]);
      } else {
        for (std::size_t j = 0; j < e.chain.arrows.size(); ++j) {
          image.arrows.push_back(f.base_map.arr(e.chain.arrows[j]));
          slots.push_back(f.arr[e.chain.arrows[j]] * e.slots[j]);
        }
      }
      const std::size_t kb = lb.strings->index_of(image);
      const Matrix fm = lb.fib_coords[p][kb] * vstack(slots, e.slots[0].cols());
      m.set_block(la.offset[p][k], lb.offset[p][kb], fm.transpose());
    }
    out.lin.push_back(std::move(m));
  }
  out.lin_certificate = chain_map_is_quasi_iso(lb.complex, la.complex, out.lin);
  const SubComplex va = vb_subcomplex(la);
  const SubComplex vbb = vb_subcomplex(lb);
  for (int p = 0; p <= p_max; ++p) {
    out.vb.push_back(restrict(out.lin[p], vbb.spaces[p], va.spaces[p],
                              "pullback leaves the projectable cochains"));
  }
  out.vb_certificate = chain_map_is_quasi_iso(vbb.complex, va.complex, out.vb);
  out.vb_iso = out.vb_certificate.is_quasi_iso;
  return out;
}

RuthVsDual ruth_vs_dual_vb(const TwoTermRuth& r, int p_max) {
  const auto hr = complex_cohomology(ruth_complex(r, p_max));
  const VBGroupoid v = grothendieck(r);
  const VBGroupoid d = dual_vb(v);
  const LinComplex l = lin_complex(d, p_max);
  const auto hv = complex_cohomology(vb_subcomplex(l).complex);
  RuthVsDual out;
  for (int n = -1; n <= p_max - 2; ++n) {
    const std::size_t a = hr[n + 1].dim;
    const std::size_t b = hv[n + 1].dim;
    out.degrees.push_back(n);
    out.ruth_dims.push_back(a);
    out.vb_dims.push_back(b);
    if (a != b) out.report.add("dimension", {"H^" + std::to_string(n)});
  }
  return out;
}

}  // namespace vbg
