#include "vbg/descent.hpp"

#include <algorithm>
#include <string>

#include "vbg/subspace.hpp"

namespace vbg {

namespace {

const FiniteGroupoid& base_of(const CechGroupoid& cech) { return *cech.projection.codomain; }

std::string kernel_name(const CechGroupoid& cech, ObjectId x, int j, int i) {
  return base_of(cech).object_name(x) + "@" + std::to_string(j) + "," + std::to_string(i);
}

ArrowId kernel_arrow(const CechGroupoid& cech, ObjectId x, int j, int i) {
  return cech.arrow_id(base_of(cech).unit(x), j, i);
}

void require_over_cech(const VBGroupoid& v, const CechGroupoid& cech) {
  if (v.base != &cech.groupoid) throw InvalidInput("VB-groupoid is not over the Čech groupoid");
  check_vb_shapes(v);
}

void require_cleavage(const VBGroupoid& v, const Cleavage& c) {
  const Report r = check_cleavage(v, c);
  if (!r.ok()) throw InvalidInput("invalid cleavage: " + r.summary());
}

/// Σ_{jr}(ρ_{ri} e) Σ_{ri}(e), an arrow over (1_x, j, i).
Matrix lift_product(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c,
                    ObjectId x, int j, int r, int i) {
  const ArrowId a = kernel_arrow(cech, x, j, r), b = kernel_arrow(cech, x, r, i);
  return v.mul(a, b, c.sigma[a] * v.t[b] * c.sigma[b], c.sigma[b]);
}

/// Columns X : E_i -> C_j with M + D X invertible, where im M + im D is everything.
Matrix invertibility_correction(const Matrix& M, const Matrix& D) {
  const std::size_t n = M.rows();
  const Matrix K = kernel(M);
  if (K.cols() == 0) return Matrix::zero(D.cols(), n);
  const Subspace im = image_space(M);
  const Matrix L = complement(im).basis();
  const auto sol = solve_linear(hstack(D, M), L);
  if (!sol) throw DescentError("kernel action is not a quasi-isomorphism");
  const Matrix B = sol->row_range(0, D.cols());
  const Matrix H = complement(Subspace::span(K)).basis();
  const Matrix frame = hstack(K, H);
  Matrix values = hstack(B, Matrix::zero(D.cols(), H.cols()));
  return values * *inverse(frame);
}

}  // namespace

PartitionOfUnity uniform_partition(const CechGroupoid& cech) {
  const auto& G = base_of(cech);
  PartitionOfUnity l;
  for (int x = 0; x < G.num_objects(); ++x) {
    std::vector<Rational> w(cech.cover.size(), Rational(0));
    const auto idx = cech.indices_containing(x);
    for (int i : idx) w[i] = Rational(1, static_cast<long>(idx.size()));
    l.weight.push_back(std::move(w));
  }
  return l;
}

PartitionOfUnity point_partition(const CechGroupoid& cech) {
  const auto& G = base_of(cech);
  PartitionOfUnity l;
  for (int x = 0; x < G.num_objects(); ++x) {
    std::vector<Rational> w(cech.cover.size(), Rational(0));
    w[cech.min_index(x)] = 1;
    l.weight.push_back(std::move(w));
  }
  return l;
}

Report check_partition(const CechGroupoid& cech, const PartitionOfUnity& l) {
  const auto& G = base_of(cech);
  Report r;
  if (l.weight.size() != static_cast<std::size_t>(G.num_objects())) {
    r.add("shape", {"one weight row per object"});
    return r;
  }
  for (int x = 0; x < G.num_objects(); ++x) {
    if (l.weight[x].size() != cech.cover.size()) {
      r.add("shape", {G.object_name(x)});
      continue;
    }
    const auto idx = cech.indices_containing(x);
    Rational total = 0;
    for (std::size_t i = 0; i < cech.cover.size(); ++i) {
      const Rational& w = l.weight[x][i];
      const std::string at = G.object_name(x) + "@" + std::to_string(i);
      if (w < 0) r.add("negative weight", {at});
      if (w != 0 && std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) {
        r.add("support outside the cover set", {at});
      }
      total += w;
    }
    if (total != 1) r.add("weights do not sum to one", {G.object_name(x)});
  }
  return r;
}

VBMap pullback_map(const CechGroupoid& cech, const VBMap& phi, const VBGroupoid& source,
                   const VBGroupoid& target) {
  const auto& G = base_of(cech);
  if (phi.source->base != &G || phi.target->base != &G ||
      !same_map(phi.base_map, identity_map(G))) {
    throw InvalidInput("map is not over the identity of the cover's base");
  }
  const auto& P = cech.projection;
  VBMap out{&source, &target, identity_map(cech.groupoid), {}, {}};
  for (int a = 0; a < cech.groupoid.num_objects(); ++a) out.obj.push_back(phi.obj[P.obj(a)]);
  for (int a = 0; a < cech.groupoid.num_arrows(); ++a) out.arr.push_back(phi.arr[P.arr(a)]);
  return out;
}

DescendedMap descend_map(const CechGroupoid& cech, const VBMap& psi, const VBGroupoid& gamma,
                         const VBGroupoid& gamma2, const PartitionOfUnity& l) {
  const auto& G = base_of(cech);
  const auto& GU = cech.groupoid;
  const Report lr = check_partition(cech, l);
  if (!lr.ok()) throw InvalidInput("invalid partition of unity: " + lr.summary());
  if (gamma.base != &G || gamma2.base != &G) throw InvalidInput("Γ, Γ' must live over the base");
  if (!same_map(psi.base_map, identity_map(GU))) {
    throw InvalidInput("ψ must cover the identity of the Čech groupoid");
  }
  const BaseChange pg = base_change(cech.projection, gamma);
  const BaseChange pg2 = base_change(cech.projection, gamma2);
  if (!same_vb(*pg.vb, *psi.source) || !same_vb(*pg2.vb, *psi.target)) {
    throw InvalidInput("ψ does not run between the pullbacks of Γ and Γ'");
  }
  const Report mr = check_vbmap(psi);
  if (!mr.ok()) throw InvalidInput("ψ is not a VB-map: " + mr.summary());

  const CoreData k2 = core(gamma2);
  DescendedMap out;
  out.beta.resize(GU.num_arrows());
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        const ArrowId a = kernel_arrow(cech, x, j, i);
        const Matrix defect =
            psi.arr[a] * gamma.u[x] - gamma2.u[x] * psi.obj[cech.object_id(x, i)];
        out.beta[a] = k2.coords(x, defect);
      }
    }
    for (int i : idx) {
      for (int j : idx) {
        for (int k : idx) {
          Matrix lhs = out.beta[kernel_arrow(cech, x, k, j)];
          lhs += out.beta[kernel_arrow(cech, x, j, i)];
          if (!(lhs == out.beta[kernel_arrow(cech, x, k, i)])) {
            throw DescentError("β cocycle law fails at " + kernel_name(cech, x, k, i));
          }
        }
      }
    }
  }
  out.alpha.resize(GU.num_objects());
  for (int a = 0; a < GU.num_objects(); ++a) {
    const auto [x, i] = cech.objects[a];
    Matrix sum = Matrix::zero(k2.dim(x), gamma.dimE[x]);
    for (int j : cech.indices_containing(x)) {
      Matrix term = out.beta[kernel_arrow(cech, x, j, i)];
      term *= l(j, x);
      sum += term;
    }
    out.alpha[a] = std::move(sum);
  }
  out.twisted = twist(psi, out.alpha);
  out.iso = twist_iso(psi, out.alpha);

  out.phi = VBMap{&gamma, &gamma2, identity_map(G), {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) {
    out.phi.obj.push_back(out.twisted.obj[cech.object_id(x, cech.min_index(x))]);
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    const int j0 = cech.min_index(G.target(g)), i0 = cech.min_index(G.source(g));
    out.phi.arr.push_back(out.twisted.arr[cech.arrow_id(g, j0, i0)]);
  }
  out.pulled = pullback_map(cech, out.phi, *psi.source, *psi.target);
  for (int a = 0; a < GU.num_objects(); ++a) {
    if (!(out.pulled.obj[a] == out.twisted.obj[a])) {
      throw DescentError("twisted map does not descend at object " + GU.object_name(a));
    }
  }
  for (int a = 0; a < GU.num_arrows(); ++a) {
    if (!(out.pulled.arr[a] == out.twisted.arr[a])) {
      throw DescentError("twisted map does not descend at arrow " + GU.arrow_name(a));
    }
  }
  const Report pr = check_vbmap(out.phi);
  if (!pr.ok()) throw DescentError("descended map is not a VB-map: " + pr.summary());
  const Report ir = check_vbmap_iso(out.iso, psi, out.pulled);
  if (!ir.ok()) throw DescentError("ψ ≇ π*φ: " + ir.summary());
  return out;
}

Cleavage pullback_cleavage(const CechGroupoid& cech, const Cleavage& c) {
  Cleavage out;
  for (int a = 0; a < cech.groupoid.num_arrows(); ++a) {
    out.sigma.push_back(c.sigma[cech.projection.arr(a)]);
  }
  return out;
}

Matrix kernel_action(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c,
                     ObjectId x, int j, int i) {
  const ArrowId a = kernel_arrow(cech, x, j, i);
  return v.t[a] * c.sigma[a];
}

Report check_kernel_invertible(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c) {
  require_over_cech(v, cech);
  const auto& G = base_of(cech);
  Report r;
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        if (!is_invertible(kernel_action(v, cech, c, x, j, i))) {
          r.add("kernel action not invertible", {kernel_name(cech, x, j, i)});
        }
      }
    }
  }
  return r;
}

Report check_u_flat(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c) {
  require_over_cech(v, cech);
  const auto& G = base_of(cech);
  Report r;
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        for (int k : idx) {
          if (!(lift_product(v, cech, c, x, k, j, i) == c.sigma[kernel_arrow(cech, x, k, i)])) {
            r.add("kernel lifts not flat",
                  {kernel_name(cech, x, k, j), kernel_name(cech, x, j, i)});
          }
        }
      }
    }
  }
  return r;
}

Cleavage symmetrize_cleavage(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c) {
  require_over_cech(v, cech);
  require_cleavage(v, c);
  const Report inv = check_kernel_invertible(v, cech, c);
  if (!inv.ok()) throw InvalidInput("symmetrization needs invertible kernel actions: " + inv.summary());
  const auto& G = base_of(cech);
  const auto inverses = compute_inverses(v);
  Cleavage out = c;
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        if (j >= i) continue;
        const ArrowId back = kernel_arrow(cech, x, i, j);
        const Matrix rho_inv = *inverse(kernel_action(v, cech, c, x, i, j));
        out.sigma[kernel_arrow(cech, x, j, i)] = inverses[back] * c.sigma[back] * rho_inv;
      }
    }
  }
  return out;
}

Cleavage flatten_cleavage(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c,
                          const PartitionOfUnity& l) {
  require_over_cech(v, cech);
  require_cleavage(v, c);
  const Report lr = check_partition(cech, l);
  if (!lr.ok()) throw InvalidInput("invalid partition of unity: " + lr.summary());
  const auto& G = base_of(cech);
  Cleavage out = c;
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        if (i == j) continue;
        const ArrowId a = kernel_arrow(cech, x, j, i);
        Matrix sum = Matrix::zero(v.dimGamma[a], v.dimE[cech.object_id(x, i)]);
        for (int r : idx) {
          if (l(r, x) == 0) continue;
          Matrix term = lift_product(v, cech, c, x, j, r, i);
          term *= l(r, x);
          sum += term;
        }
        out.sigma[a] = std::move(sum);
      }
    }
  }
  const Report fr = check_u_flat(v, cech, out);
  if (!fr.ok()) throw DescentError("averaged cleavage is not flat: " + fr.summary());
  return out;
}

InvertiblePadding make_invertible(const VBGroupoid& v, const CechGroupoid& cech) {
  require_over_cech(v, cech);
  const auto& GU = cech.groupoid;
  const auto& G = base_of(cech);
  const OrbitData orbits = orbits_and_isotropy(GU);
  std::vector<std::size_t> pad(GU.num_objects(), 0);
  for (const auto& orbit : orbits.orbits) {
    std::size_t top = 0;
    for (ObjectId a : orbit) top = std::max(top, v.dimE[a]);
    for (ObjectId a : orbit) pad[a] = top - v.dimE[a];
  }

  InvertiblePadding out;
  out.omega = std::make_unique<VBGroupoid>(acyclic_vb(GU, pad));
  out.padded = std::make_unique<VBGroupoid>(direct_sum_vb(v, *out.omega));
  const VBGroupoid& w = *out.padded;
  out.cleavage = choose_cleavage(w);
  const CoreData k = core(w);
  for (int x = 0; x < G.num_objects(); ++x) {
    const auto idx = cech.indices_containing(x);
    for (int i : idx) {
      for (int j : idx) {
        if (i == j) continue;
        const ArrowId a = kernel_arrow(cech, x, j, i);
        const ObjectId target = cech.object_id(x, j);
        const Matrix X = invertibility_correction(kernel_action(w, cech, out.cleavage, x, j, i),
                                                  k.anchor[target]);
        if (X.is_zero()) continue;
        const Matrix lifted = w.mul(GU.unit(target), a, k.basis[target] * X,
                                    Matrix::zero(w.dimGamma[a], X.cols()));
        out.cleavage.sigma[a] += lifted;
      }
    }
  }
  const Report r = check_kernel_invertible(w, cech, out.cleavage);
  if (!r.ok()) throw DescentError("padding left a singular kernel action: " + r.summary());

  out.projection = VBMap{&w, &v, identity_map(GU), {}, {}};
  for (int a = 0; a < GU.num_objects(); ++a) {
    out.projection.obj.push_back(
        hstack(Matrix::identity(v.dimE[a]), Matrix::zero(v.dimE[a], pad[a])));
  }
  for (int a = 0; a < GU.num_arrows(); ++a) {
    out.projection.arr.push_back(hstack(Matrix::identity(v.dimGamma[a]),
                                        Matrix::zero(v.dimGamma[a], out.omega->dimGamma[a])));
  }
  return out;
}

DescendedObject descend_object(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c) {
  require_over_cech(v, cech);
  require_cleavage(v, c);
  const Report inv = check_kernel_invertible(v, cech, c);
  if (!inv.ok()) throw DescentError("kernel actions not invertible: " + inv.summary());
  const Report flat = check_u_flat(v, cech, c);
  if (!flat.ok()) throw DescentError("cleavage is not U-flat: " + flat.summary());
  const auto& G = base_of(cech);
  const auto& GU = cech.groupoid;

  DescendedObject out;
  out.section = GroupoidMap{&G, &GU, {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) {
    out.section.object_map.push_back(cech.object_id(x, cech.min_index(x)));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    out.section.arrow_map.push_back(
        cech.arrow_id(g, cech.min_index(G.target(g)), cech.min_index(G.source(g))));
  }
  BaseChange restricted = base_change(out.section, v);
  out.descended = std::move(restricted.vb);
  out.pulled = base_change(cech.projection, *out.descended);

  const auto inverses = compute_inverses(v);
  out.comparison = VBMap{out.pulled.vb.get(), &v, identity_map(GU), {}, {}};
  for (int a = 0; a < GU.num_objects(); ++a) {
    const auto [x, i] = cech.objects[a];
    out.comparison.obj.push_back(kernel_action(v, cech, c, x, i, cech.min_index(x)));
  }
  for (int a = 0; a < GU.num_arrows(); ++a) {
    const auto [g, j, i] = cech.arrows[a];
    const ObjectId x = G.source(g), y = G.target(g);
    const int i0 = cech.min_index(x), j0 = cech.min_index(y);
    const ArrowId rep = cech.arrow_id(g, j0, i0);
    const ArrowId in = kernel_arrow(cech, x, i, i0), out_k = kernel_arrow(cech, y, j, j0);
    const ArrowId back = GU.inverse(in);
    const Matrix inner = v.mul(rep, back, Matrix::identity(v.dimGamma[rep]),
                               inverses[in] * c.sigma[in] * v.s[rep]);
    const ArrowId mid = GU.compose(rep, back);
    out.comparison.arr.push_back(
        v.mul(out_k, mid, c.sigma[out_k] * v.t[rep], inner));
  }
  const Report mr = check_vbmap(out.comparison);
  if (!mr.ok()) throw DescentError("comparison is not a VB-map: " + mr.summary());
  if (!vbmap_invertible(out.comparison)) throw DescentError("comparison is not invertible");
  return out;
}

Descent descend(const VBGroupoid& v, const CechGroupoid& cech, const PartitionOfUnity& l) {
  Descent out;
  out.padding = make_invertible(v, cech);
  const VBGroupoid& w = *out.padding.padded;
  out.flat = flatten_cleavage(w, cech, symmetrize_cleavage(w, cech, out.padding.cleavage), l);
  out.object = descend_object(w, cech, out.flat);
  return out;
}

}  // namespace vbg
