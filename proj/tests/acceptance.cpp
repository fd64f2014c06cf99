#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "vbg/cohomology.hpp"
#include "vbg/descent.hpp"
#include "vbg/generate.hpp"

namespace vbg {
namespace {

using namespace fixtures;

struct Criterion {
  int id;
  std::string name;
  std::size_t checks = 0, failures = 0;
  std::string first_failure;
  std::vector<std::string> unmet;
  std::vector<std::pair<std::string, std::size_t>> counts;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
  void expect(const Report& r, const std::string& what) {
    expect(r.ok(), r.ok() ? what : what + ": " + r.summary());
  }
  void count(const std::string& what, std::size_t n, std::size_t at_least) {
    counts.emplace_back(what, n);
    if (n < at_least) unmet.push_back(what + " " + std::to_string(n) + " < " + std::to_string(at_least));
  }
  bool passed() const { return failures == 0 && unmet.empty(); }
};

std::vector<FiniteGroupoid> bases() {
  return {point(), cyclic(2), cyclic(3), pair(2), disjoint_union(point(), cyclic(2)),
          s3_on_three_points()};
}

std::vector<FiniteGroupoid> small_bases() {
  return {point(), cyclic(2), pair(2), disjoint_union(point(), cyclic(2))};
}

struct CoverCase {
  FiniteGroupoid base;
  std::vector<std::vector<ObjectId>> sets;
};

std::vector<CoverCase> cover_cases() {
  return {
      {point(), {{0}, {0}}},
      {point(), {{0}, {0}, {0}}},
      {cyclic(2), {{0}, {0}}},
      {pair(2), {{0}, {0, 1}}},
      {pair(2), {{0, 1}, {1}, {0}}},
      {s3_on_three_points(), {{0, 1}, {1, 2}, {0, 2}}},
  };
}

std::string label(const FiniteGroupoid& g, int k) {
  return std::to_string(g.num_objects()) + " objects, " + std::to_string(g.num_arrows()) +
         " arrows, case " + std::to_string(k);
}

// sum = first ⊕ rest, both directions of the first summand.
RuthMorphism ruth_projection(const TwoTermRuth& sum, const TwoTermRuth& first) {
  RuthMorphism p = zero_morphism(sum, first);
  for (std::size_t x = 0; x < p.PhiE.size(); ++x) {
    p.PhiE[x] = hstack(Matrix::identity(first.dimE[x]),
                       Matrix::zero(first.dimE[x], sum.dimE[x] - first.dimE[x]));
    p.PhiC[x] = hstack(Matrix::identity(first.dimC[x]),
                       Matrix::zero(first.dimC[x], sum.dimC[x] - first.dimC[x]));
  }
  return p;
}

RuthMorphism ruth_inclusion(const TwoTermRuth& first, const TwoTermRuth& sum) {
  RuthMorphism i = zero_morphism(first, sum);
  const RuthMorphism p = ruth_projection(sum, first);
  for (std::size_t x = 0; x < i.PhiE.size(); ++x) {
    i.PhiE[x] = p.PhiE[x].transpose();
    i.PhiC[x] = p.PhiC[x].transpose();
  }
  return i;
}

VBMap vb_projection(const VBGroupoid& sum, const VBGroupoid& first) {
  const auto& G = *first.base;
  VBMap p{&sum, &first, identity_map(G), {}, {}};
  for (int x = 0; x < G.num_objects(); ++x) {
    p.obj.push_back(hstack(Matrix::identity(first.dimE[x]),
                           Matrix::zero(first.dimE[x], sum.dimE[x] - first.dimE[x])));
  }
  for (int g = 0; g < G.num_arrows(); ++g) {
    p.arr.push_back(hstack(Matrix::identity(first.dimGamma[g]),
                           Matrix::zero(first.dimGamma[g], sum.dimGamma[g] - first.dimGamma[g])));
  }
  return p;
}

VBMap vb_inclusion(const VBGroupoid& first, const VBGroupoid& sum) {
  const VBMap p = vb_projection(sum, first);
  VBMap i{&first, &sum, p.base_map, {}, {}};
  for (const auto& m : p.obj) i.obj.push_back(m.transpose());
  for (const auto& m : p.arr) i.arr.push_back(m.transpose());
  return i;
}

std::vector<std::size_t> random_dims(Rng& rng, const FiniteGroupoid& g, std::size_t top) {
  std::vector<std::size_t> d(g.num_objects());
  for (auto& k : d) k = rng() % (top + 1);
  return d;
}

// Identity-base VB-maps with stable storage for their ends.
struct MapZoo {
  std::vector<std::unique_ptr<TwoTermRuth>> ruths;
  std::vector<std::unique_ptr<VBGroupoid>> vbs;
  std::vector<VBMap> maps;

  const VBGroupoid& keep(VBGroupoid v) {
    vbs.push_back(std::make_unique<VBGroupoid>(std::move(v)));
    return *vbs.back();
  }
  const TwoTermRuth& keep(TwoTermRuth r) {
    ruths.push_back(std::make_unique<TwoTermRuth>(std::move(r)));
    return *ruths.back();
  }
};

// Gauge maps, projections and inclusions of acyclic summands, maps to and
// from zero, and non-Morita projections, over g.
void fill_zoo(MapZoo& z, Rng& rng, const FiniteGroupoid& g) {
  const TwoTermRuth& r = z.keep(random_ruth(rng, g));
  GaugeResult gauge = random_gauge(rng, r);
  z.ruths.push_back(std::move(gauge.ruth));
  const TwoTermRuth& r2 = *z.ruths.back();
  const VBGroupoid& v = z.keep(grothendieck(r));
  const VBGroupoid& w = z.keep(grothendieck(r2));
  const VBGroupoid& zero = z.keep(zero_vb(g));
  const VBGroupoid& a = z.keep(grothendieck(*random_gauge(rng, acyclic_ruth(g)).ruth));
  const VBGroupoid& sum = z.keep(direct_sum_vb(v, a));
  const VBGroupoid& t = z.keep(grothendieck(trivial_rep(g)));
  const VBGroupoid& vt = z.keep(direct_sum_vb(v, t));
  z.maps.push_back(grothendieck_map(gauge.morphism, v, w));
  z.maps.push_back(vb_projection(sum, v));
  z.maps.push_back(vb_inclusion(v, sum));
  z.maps.push_back(zero_vbmap(a, zero));
  z.maps.push_back(zero_vbmap(zero, a));
  z.maps.push_back(zero_vbmap(v, zero));
  z.maps.push_back(zero_vbmap(t, zero));
  z.maps.push_back(zero_vbmap(zero, t));
  z.maps.push_back(vb_projection(vt, v));
  z.maps.push_back(vb_inclusion(v, vt));
}

void grothendieck_round_trip(Criterion& c) {
  Rng rng(1001);
  std::size_t ruths = 0, morphisms = 0, compositions = 0;
  int k = 0;
  for (int round = 0; round < 40; ++round) {
    for (const auto& g : bases()) {
      const std::string where = label(g, k++);
      RuthShape shape;
      shape.max_trivial = 1 + round % 2;
      shape.max_acyclic = round % 3 == 0 ? 0 : 1;
      const TwoTermRuth r = random_ruth(rng, g, shape);
      const VBGroupoid v = grothendieck(r);
      const SplitResult s0 = split(v, choose_cleavage(v));
      c.expect(same_ruth(*s0.ruth, r), "split(grothendieck r) != r, " + where);
      ++ruths;

      GaugeResult g1 = random_gauge(rng, r);
      GaugeResult g2 = random_gauge(rng, *g1.ruth);
      const VBGroupoid v1 = grothendieck(*g1.ruth), v2 = grothendieck(*g2.ruth);
      const VBMap f1 = grothendieck_map(g1.morphism, v, v1);
      const VBMap f2 = grothendieck_map(g2.morphism, v1, v2);
      const SplitResult s1 = split(v1, choose_cleavage(v1));
      const SplitResult s2 = split(v2, choose_cleavage(v2));
      c.expect(same_morphism_data(split_map(f1, s0, s1), g1.morphism), "split_map∘grothendieck_map, " + where);
      c.expect(same_morphism_data(split_map(f2, s1, s2), g2.morphism), "split_map∘grothendieck_map, " + where);
      c.expect(same_morphism_data(split_map(identity_vbmap(v), s0, s0), identity_morphism(r)),
               "identity, " + where);
      morphisms += 3;
      const RuthMorphism m21 = compose_ruth_morphisms(g2.morphism, g1.morphism);
      c.expect(same_vbmap_data(grothendieck_map(m21, v, v2), compose_vbmaps(f2, f1)),
               "grothendieck_map of a composite, " + where);
      c.expect(same_morphism_data(split_map(compose_vbmaps(f2, f1), s0, s2), m21),
               "split_map of a composite, " + where);
      ++compositions;
    }
  }
  c.count("ruths", ruths, 200);
  c.count("morphisms", morphisms, 200);
  c.count("compositions", compositions, 1);
}

void axiom_soundness(Criterion& c) {
  Rng rng(1002);
  std::size_t objects = 0;
  auto vb = [&](const VBGroupoid& v, const std::string& what) {
    c.expect(check_vbgroupoid(v), what);
    ++objects;
  };
  auto map = [&](const VBMap& f, const std::string& what) {
    c.expect(check_vbmap(f), what);
    ++objects;
  };
  auto ruth = [&](const TwoTermRuth& r, const std::string& what) {
    c.expect(check_ruth(r), what);
    ++objects;
  };
  int k = 0;
  for (int round = 0; round < 4; ++round) {
    for (const auto& g : bases()) {
      const std::string where = label(g, k++);
      const TwoTermRuth r = random_ruth(rng, g);
      ruth(r, "random_ruth, " + where);
      GaugeResult gauge = random_gauge(rng, r);
      ruth(*gauge.ruth, "gauge_transform, " + where);
      c.expect(check_ruth_morphism(gauge.morphism), "gauge morphism, " + where);
      ruth(dual_ruth(r), "dual_ruth, " + where);
      const TwoTermRuth a = acyclic_ruth(g, 1 + round % 2);
      ruth(direct_sum(r, a), "direct_sum, " + where);

      const VBGroupoid v = grothendieck(r), w = grothendieck(*gauge.ruth);
      vb(v, "grothendieck, " + where);
      const VBMap phi = grothendieck_map(gauge.morphism, v, w);
      map(phi, "grothendieck_map, " + where);
      vb(dual_vb(v), "dual_vb, " + where);
      const DualMap dm = dual_vbmap(phi);
      map(dm.map, "dual_vbmap, " + where);
      const VBGroupoid omega = acyclic_vb(g, random_dims(rng, g, 2));
      vb(omega, "acyclic_vb, " + where);
      const VBGroupoid sum = direct_sum_vb(v, omega);
      vb(sum, "direct_sum_vb, " + where);
      const SplitResult sp = split(v, choose_cleavage(v));
      ruth(*sp.ruth, "split, " + where);
      map(sp.iso, "split iso, " + where);

      const ArrowVB av = arrow_vb(v);
      vb(*av.vb, "arrow_vb, " + where);
      for (const VBMap* f : {&av.sigma, &av.tau, &av.mu}) map(*f, "arrow_vb structure map, " + where);
      c.expect(check_vbmap_iso(av.universal, av.sigma, av.tau), "arrow_vb universal iso, " + where);

      const CoreData kw = core(w);
      std::vector<Matrix> alpha;
      for (int x = 0; x < g.num_objects(); ++x) alpha.push_back(random_matrix(rng, kw.dim(x), v.dimE[x]));
      const VBMap tw = twist(phi, alpha);
      map(tw, "twist, " + where);
      c.expect(check_vbmap_iso(twist_iso(phi, alpha), phi, tw), "twist iso, " + where);

      const QuasiInverse q = quasi_inverse(tw);
      map(q.psi, "quasi_inverse, " + where);
      c.expect(check_vbmap_iso(q.alpha1, compose_vbmaps(q.psi, tw), identity_vbmap(v)),
               "quasi_inverse alpha1, " + where);
      c.expect(check_vbmap_iso(q.alpha2, compose_vbmaps(tw, q.psi), identity_vbmap(w)),
               "quasi_inverse alpha2, " + where);
    }
    for (const auto& cc : cover_cases()) {
      const std::string where = label(cc.base, k++);
      const auto cech = cech_groupoid(cc.base, cc.sets);
      const VBGroupoid gamma = grothendieck(random_ruth(rng, cc.base));
      const BaseChange bc = base_change(cech->projection, gamma);
      vb(*bc.vb, "base_change, " + where);
      map(bc.map, "base_change map, " + where);
      GaugeResult gauge = random_gauge(rng, pullback_ruth(cech->projection, random_ruth(rng, cc.base)));
      VBGroupoid v = grothendieck(*gauge.ruth);
      if (round % 2) v = direct_sum_vb(v, acyclic_vb(cech->groupoid, random_dims(rng, cech->groupoid, 1)));
      const Descent d = descend(v, *cech, point_partition(*cech));
      vb(*d.padding.omega, "descent padding, " + where);
      vb(*d.padding.padded, "descent padded, " + where);
      map(d.padding.projection, "descent projection, " + where);
      c.expect(check_cleavage(*d.padding.padded, d.flat), "descent cleavage, " + where);
      vb(*d.object.descended, "descended object, " + where);
      vb(*d.object.pulled.vb, "descended pullback, " + where);
      map(d.object.comparison, "descent comparison, " + where);
    }
  }
  c.count("validated objects", objects, 200);
}

void quasi_iso_iff_vb_morita(Criterion& c) {
  Rng rng(1003);
  std::size_t morphisms = 0, positives = 0, negatives = 0;
  int k = 0;
  auto agree = [&](const RuthMorphism& m, const std::string& where) {
    const VBGroupoid a = grothendieck(*m.source), b = grothendieck(*m.target);
    const bool q = is_quasi_iso(m).is_quasi_iso;
    const bool vm = is_vb_morita(grothendieck_map(m, a, b)).is_vb_morita;
    c.expect(q == vm, "quasi-iso " + std::to_string(q) + " vs VB-Morita " + std::to_string(vm) + ", " + where);
    ++morphisms;
    (q ? positives : negatives) += 1;
  };
  for (int round = 0; round < 5; ++round) {
    for (const auto& g : bases()) {
      const std::string where = label(g, k++);
      const TwoTermRuth r = random_ruth(rng, g);
      const TwoTermRuth r2 = random_ruth(rng, g);
      GaugeResult gauge = random_gauge(rng, r);
      const TwoTermRuth zero = zero_ruth(g);
      const TwoTermRuth a = acyclic_ruth(g);
      const TwoTermRuth ra = direct_sum(r, a);
      const TwoTermRuth rr = direct_sum(r, r2);
      GaugeResult gs = random_gauge(rng, ra);
      agree(gauge.morphism, "gauge, " + where);
      agree(zero_morphism(r, zero), "to zero, " + where);
      agree(zero_morphism(zero, r), "from zero, " + where);
      agree(zero_morphism(a, zero), "acyclic to zero, " + where);
      agree(ruth_projection(ra, r), "acyclic projection, " + where);
      agree(ruth_inclusion(r, ra), "acyclic inclusion, " + where);
      agree(compose_ruth_morphisms(gs.morphism, ruth_inclusion(r, ra)), "gauged inclusion, " + where);
      agree(ruth_projection(rr, r), "projection, " + where);
      agree(ruth_inclusion(r, rr), "inclusion, " + where);
      agree(zero_morphism(r, r), "zero endomorphism, " + where);
    }
  }
  c.count("morphisms", morphisms, 200);
  c.count("quasi-isomorphisms", positives, 1);
  c.count("non-quasi-isomorphisms", negatives, 1);
}

void quasi_inverse_on_morita(Criterion& c) {
  Rng rng(1004);
  std::size_t morita = 0, rejected = 0;
  for (int round = 0; round < 3; ++round) {
    for (const auto& g : bases()) {
      MapZoo zoo;
      fill_zoo(zoo, rng, g);
      for (std::size_t i = 0; i < zoo.maps.size(); ++i) {
        const VBMap& phi = zoo.maps[i];
        const std::string where = label(g, static_cast<int>(i));
        if (is_vb_morita(phi).is_vb_morita) {
          ++morita;
          try {
            const QuasiInverse q = quasi_inverse(phi);
            c.expect(check_vbmap(q.psi), "quasi-inverse map, " + where);
            c.expect(check_vbmap_iso(q.alpha1, compose_vbmaps(q.psi, phi), identity_vbmap(*phi.source)),
                     "ψ∘φ ≅ id, " + where);
            c.expect(check_vbmap_iso(q.alpha2, compose_vbmaps(phi, q.psi), identity_vbmap(*phi.target)),
                     "φ∘ψ ≅ id, " + where);
          } catch (const std::exception& e) {
            c.expect(false, std::string("quasi_inverse threw on a VB-Morita map: ") + e.what());
          }
        } else {
          ++rejected;
          bool threw = false;
          try {
            quasi_inverse(phi);
          } catch (const InvalidInput&) {
            threw = true;
          }
          c.expect(threw, "quasi_inverse accepted a non-VB-Morita map, " + where);
        }
      }
    }
  }
  c.count("VB-Morita maps", morita, 20);
  c.count("non-VB-Morita maps", rejected, 5);
}

std::vector<std::unique_ptr<VBGroupoid>> cohomology_fixtures(Rng& rng, std::vector<FiniteGroupoid>& keep) {
  std::vector<std::unique_ptr<VBGroupoid>> out;
  keep = small_bases();
  for (const auto& cc : {CoverCase{point(), {{0}, {0}}}, CoverCase{cyclic(2), {{0}, {0}}}}) {
    keep.push_back(cc.base);
  }
  for (std::size_t b = 0; b < keep.size(); ++b) {
    const auto& g = keep[b];
    out.push_back(std::make_unique<VBGroupoid>(grothendieck(random_ruth(rng, g))));
    out.push_back(std::make_unique<VBGroupoid>(grothendieck(random_ruth(rng, g))));
    out.push_back(std::make_unique<VBGroupoid>(grothendieck(trivial_rep(g))));
    out.push_back(std::make_unique<VBGroupoid>(acyclic_vb(g, random_dims(rng, g, 1))));
    out.push_back(std::make_unique<VBGroupoid>(dual_vb(*out[out.size() - 4])));
    out.push_back(std::make_unique<VBGroupoid>(
        direct_sum_vb(*out[out.size() - 5], acyclic_vb(g, std::vector<std::size_t>(g.num_objects(), 1)))));
  }
  return out;
}

void hvb_equals_hlin_criterion(Criterion& c) {
  Rng rng(1005);
  std::vector<FiniteGroupoid> keep;
  auto fixtures = cohomology_fixtures(rng, keep);
  std::vector<std::unique_ptr<CechGroupoid>> cechs;
  std::vector<std::unique_ptr<VBGroupoid>> pulled;
  cechs.push_back(cech_groupoid(keep[1], {{0}, {0}}));
  cechs.push_back(cech_groupoid(keep[2], {{0}, {0, 1}}));
  for (const auto& cech : cechs) {
    const VBGroupoid gamma = grothendieck(random_ruth(rng, *cech->projection.codomain));
    pulled.push_back(std::move(base_change(cech->projection, gamma).vb));
  }
  std::size_t n = 0;
  for (auto* list : {&fixtures, &pulled}) {
    for (const auto& v : *list) {
      const std::string where = "fixture " + std::to_string(n++);
      const LinVsVB res = hvb_equals_hlin(*v, 3);
      c.expect(res.report, where);
      c.expect(res.inclusion_iso, "inclusion not an isomorphism, " + where);
      for (const auto& row : res.degrees) {
        if (row.p > 2) continue;
        c.expect(row.dim_h_lin == row.dim_h_vb, "H^" + std::to_string(row.p) + " dimensions, " + where);
      }
      const LinComplex l = lin_complex(*v, 3);
      const Cleavage cl = choose_cleavage(*v);
      const auto ret = filtration_retraction(l, homotopy_operator(l, cl));
      const auto closed = retraction_closed_form(l, cl);
      for (int p = 1; p < l.p_max(); ++p) {
        c.expect(ret[p] == closed[p], "homotopy identity in degree " + std::to_string(p) + ", " + where);
      }
    }
  }
  c.count("VB-groupoid fixtures", n, 20);
}

bool iso_in_low_degrees(const QuasiIsoCertificate& cert) {
  for (const auto& d : cert.degrees) {
    if (d.degree > 2) continue;
    if (d.dim_source != d.dim_target || d.induced_rank != d.dim_source) return false;
  }
  return true;
}

void cohomology_invariance(Criterion& c) {
  Rng rng(1006);
  std::size_t positives = 0, negatives = 0, cech_maps = 0, gauge_maps = 0;
  for (const auto& g : small_bases()) {
    for (int round = 0; round < 2; ++round) {
      MapZoo zoo;
      fill_zoo(zoo, rng, g);
      for (std::size_t i = 0; i < zoo.maps.size(); ++i) {
        const VBMap& f = zoo.maps[i];
        const std::string where = label(g, static_cast<int>(i));
        const InducedMap im = induced_map_vb(f, 3);
        const bool vm = is_vb_morita(f).is_vb_morita;
        if (vm) {
          ++positives;
          gauge_maps += i == 0;
          c.expect(im.vb_iso && iso_in_low_degrees(im.vb_certificate), "VB-Morita map not iso, " + where);
        } else if (!im.vb_iso) {
          ++negatives;
        }
      }
    }
  }
  for (const auto& cc : cover_cases()) {
    if (cc.base.num_objects() > 2) continue;
    const auto cech = cech_groupoid(cc.base, cc.sets);
    const VBGroupoid gamma = grothendieck(random_ruth(rng, cc.base));
    const BaseChange bc = base_change(cech->projection, gamma);
    const std::string where = label(cc.base, static_cast<int>(cc.sets.size()));
    c.expect(is_vb_morita(bc.map).is_vb_morita, "Čech base change not VB-Morita, " + where);
    const InducedMap im = induced_map_vb(bc.map, 3);
    c.expect(im.vb_iso && iso_in_low_degrees(im.vb_certificate), "Čech base change not iso, " + where);
    ++positives;
    ++cech_maps;
  }
  c.count("VB-Morita maps", positives, 20);
  c.count("Čech base changes", cech_maps, 1);
  c.count("gauge equivalences", gauge_maps, 1);
  c.count("non-Morita negatives", negatives, 5);
}

void ruth_dual_shift(Criterion& c) {
  Rng rng(1007);
  std::size_t n = 0;
  for (int round = 0; round < 2; ++round) {
    for (const auto& g : small_bases()) {
      const std::vector<int> ones(orbits_and_isotropy(g).orbits.size(), 1);
      const std::vector<int> zeros(ones.size(), 0);
      for (const TwoTermRuth& r : {random_ruth(rng, g), random_ruth(rng, g),
                                   honest_rep(g, ones, zeros), shift_to_core(honest_rep(g, ones, ones))}) {
        const std::string where = label(g, static_cast<int>(n++));
        const RuthVsDual res = ruth_vs_dual_vb(r, 3);
        c.expect(res.report, where);
        for (std::size_t k = 0; k < res.degrees.size(); ++k) {
          if (res.degrees[k] < 0 || res.degrees[k] > 1) continue;
          c.expect(res.ruth_dims[k] == res.vb_dims[k], "H^" + std::to_string(res.degrees[k]) + ", " + where);
        }
      }
    }
  }
  c.count("ruth fixtures", n, 20);
}

void dual_and_acyclic(Criterion& c) {
  Rng rng(1008);
  std::size_t maps = 0, objects = 0, acyclic = 0;
  for (const auto& g : bases()) {
    for (int round = 0; round < 2; ++round) {
      MapZoo zoo;
      fill_zoo(zoo, rng, g);
      for (std::size_t i = 0; i < zoo.maps.size(); ++i) {
        const VBMap& f = zoo.maps[i];
        const DualMap d = dual_vbmap(f);
        c.expect(is_vb_morita(f).is_vb_morita == is_vb_morita(d.map).is_vb_morita,
                 "dual changes the verdict, " + label(g, static_cast<int>(i)));
        ++maps;
      }
      const VBGroupoid zero = zero_vb(g);
      for (const auto& v : zoo.vbs) {
        const bool a = is_acyclic(*v);
        c.expect(a == is_vb_morita(zero_vbmap(*v, zero)).is_vb_morita,
                 "projection to zero disagrees with the anchor, " + label(g, static_cast<int>(objects)));
        ++objects;
        acyclic += a;
      }
    }
  }
  c.count("identity-base maps", maps, 20);
  c.count("VB-groupoids", objects, 20);
  c.count("acyclic VB-groupoids", acyclic, 1);
}

void descent_round_trips(Criterion& c) {
  Rng rng(1009);
  std::size_t maps = 0, objects = 0, padded = 0;
  for (int round = 0; round < 9; ++round) {
    for (const auto& cc : cover_cases()) {
      const std::string where = label(cc.base, round);
      const auto cech = cech_groupoid(cc.base, cc.sets);
      const TwoTermRuth r = random_ruth(rng, cc.base);
      GaugeResult gauge = random_gauge(rng, r);
      const VBGroupoid a = grothendieck(r), b = grothendieck(*gauge.ruth);
      const VBMap phi = grothendieck_map(gauge.morphism, a, b);
      const BaseChange pa = base_change(cech->projection, a), pb = base_change(cech->projection, b);
      const VBMap pulled = pullback_map(*cech, phi, *pa.vb, *pb.vb);
      const auto l = round % 2 ? point_partition(*cech) : uniform_partition(*cech);
      try {
        const DescendedMap exact = descend_map(*cech, pulled, a, b, l);
        c.expect(same_vbmap_data(exact.phi, phi), "descend_map(π*φ) != φ, " + where);
        const CoreData kb = core(*pb.vb);
        std::vector<Matrix> alpha;
        for (int x = 0; x < cech->groupoid.num_objects(); ++x) {
          alpha.push_back(random_matrix(rng, kb.dim(x), pa.vb->dimE[x]));
        }
        const VBMap psi = twist(pulled, alpha);
        const DescendedMap d = descend_map(*cech, psi, a, b, l);
        c.expect(check_vbmap(d.phi), "descended map, " + where);
        c.expect(check_vbmap_iso(twist_iso(pulled, alpha), pulled, psi), "π*φ ≅ ψ, " + where);
        c.expect(check_vbmap_iso(d.iso, psi, d.pulled), "ψ ≅ π*(descended), " + where);
        c.expect(same_vbmap_data(d.pulled, pullback_map(*cech, d.phi, *pa.vb, *pb.vb)),
                 "pulled map is the pullback of the descended map, " + where);
      } catch (const DescentError& e) {
        c.expect(false, std::string("descend_map: ") + e.what() + ", " + where);
      }
      ++maps;

      GaugeResult pg = random_gauge(rng, pullback_ruth(cech->projection, random_ruth(rng, cc.base)));
      VBGroupoid v = grothendieck(*pg.ruth);
      if (round % 3 == 1) v = direct_sum_vb(v, acyclic_vb(cech->groupoid, random_dims(rng, cech->groupoid, 1)));
      try {
        const Descent d = descend(v, *cech, point_partition(*cech));
        const VBGroupoid& w = *d.padding.padded;
        c.expect(same_vb(w, direct_sum_vb(v, *d.padding.omega)), "padded is not Γ⊕Ω, " + where);
        c.expect(is_acyclic(*d.padding.omega), "Ω not acyclic, " + where);
        c.expect(check_kernel_invertible(w, *cech, d.flat), "kernel actions, " + where);
        c.expect(check_u_flat(w, *cech, d.flat), "flatness, " + where);
        c.expect(check_vbmap(d.object.comparison), "comparison, " + where);
        c.expect(vbmap_invertible(d.object.comparison), "comparison not invertible, " + where);
        c.expect(d.object.comparison.target == &w, "comparison lands outside Γ⊕Ω, " + where);
        c.expect(same_vb(*d.object.pulled.vb, *base_change(cech->projection, *d.object.descended).vb),
                 "comparison source is not π*(descended), " + where);
        padded += !d.padding.omega->dimE.empty() &&
                  std::any_of(d.padding.omega->dimE.begin(), d.padding.omega->dimE.end(),
                              [](std::size_t n) { return n > 0; });
      } catch (const DescentError& e) {
        c.expect(false, std::string("descent pipeline: ") + e.what() + ", " + where);
      }
      ++objects;
    }
  }
  c.count("map fixtures", maps, 50);
  c.count("perturbed pullbacks", objects, 20);
  c.count("runs with padding", padded, 1);
}

// Inhomogeneous cochains of Z2 = {0, 1} with coefficients in Q through χ.
std::vector<std::size_t> z2_oracle(int chi1, int p_max) {
  auto chi = [&](int a) { return a == 0 ? 1 : chi1; };
  std::vector<std::size_t> ranks(p_max + 2, 0);
  for (int p = 0; p < p_max; ++p) {
    const std::size_t rows = std::size_t{1} << (p + 1), cols = std::size_t{1} << p;
    Matrix d(rows, cols);
    for (std::size_t row = 0; row < rows; ++row) {
      std::vector<int> t(p + 1);
      for (int j = 0; j <= p; ++j) t[j] = (row >> (p - j)) & 1;
      auto index = [](const std::vector<int>& f) {
        std::size_t k = 0;
        for (int a : f) k = 2 * k + a;
        return k;
      };
      for (int i = 0; i <= p + 1; ++i) {
        std::vector<int> f;
        if (i == 0) {
          f.assign(t.begin() + 1, t.end());
        } else if (i == p + 1) {
          f.assign(t.begin(), t.end() - 1);
        } else {
          for (int j = 0; j <= p; ++j) {
            if (j == i - 1) {
              f.push_back((t[j] + t[j + 1]) % 2);
              ++j;
            } else {
              f.push_back(t[j]);
            }
          }
        }
        const int coeff = (i % 2 == 0 ? 1 : -1) * (i == 0 ? chi(t[0]) : 1);
        d(row, index(f)) += coeff;
      }
    }
    ranks[p + 1] = rank(d);
  }
  std::vector<std::size_t> h;
  for (int p = 0; p < p_max; ++p) h.push_back((std::size_t{1} << p) - ranks[p + 1] - ranks[p]);
  return h;
}

void oracle_agreement(Criterion& c) {
  const FiniteGroupoid z2 = cyclic(2);
  const std::vector<std::size_t> trivial_expected{1, 0, 0}, sign_expected{0, 0, 0};
  auto dims = [](const CochainComplex& cc) {
    std::vector<std::size_t> out;
    for (const auto& d : complex_cohomology(cc)) out.push_back(d.dim);
    return out;
  };
  const auto trivial = dims(differentiable_complex(z2, trivial_rep(z2), 3));
  const auto sign = dims(differentiable_complex(z2, sign_rep(z2), 3));
  c.expect(z2_oracle(1, 3) == trivial_expected, "oracle, trivial coefficients");
  c.expect(z2_oracle(-1, 3) == sign_expected, "oracle, sign coefficients");
  c.expect(trivial == z2_oracle(1, 3), "trivial coefficients disagree with the oracle");
  c.expect(sign == z2_oracle(-1, 3), "sign coefficients disagree with the oracle");
}

}  // namespace
}  // namespace vbg

int main() {
  using namespace vbg;
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria = {
      {"Grothendieck round trip", grothendieck_round_trip},
      {"constructor outputs satisfy their axioms", axiom_soundness},
      {"quasi-isomorphism iff VB-Morita", quasi_iso_iff_vb_morita},
      {"quasi-inverses of VB-Morita maps", quasi_inverse_on_morita},
      {"H_VB equals H_lin", hvb_equals_hlin_criterion},
      {"VB-Morita maps induce isomorphisms on H_VB", cohomology_invariance},
      {"ruth cohomology equals shifted dual H_VB", ruth_dual_shift},
      {"dual invariance and acyclic projection", dual_and_acyclic},
      {"descent round trips", descent_round_trips},
      {"differentiable cohomology of Z2 against the oracle", oracle_agreement},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    c.id = static_cast<int>(i + 1);
    c.name = criteria[i].first;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = std::to_string(c.checks) + " checks";
    for (const auto& [what, n] : c.counts) detail += ", " + std::to_string(n) + " " + what;
    if (c.failures) detail += "; " + std::to_string(c.failures) + " failed, first: " + c.first_failure;
    for (const auto& u : c.unmet) detail += "; too few " + u;
    std::printf("%s %d %s: %s (%.1fs)\n", c.passed() ? "PASS" : "FAIL", c.id, c.name.c_str(),
                detail.c_str(), secs);
    std::fflush(stdout);
    all = all && c.passed();
  }
  return all ? 0 : 1;
}
