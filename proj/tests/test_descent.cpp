#include <gtest/gtest.h>

#include "vbg/descent.hpp"
#include "vbg/generate.hpp"

namespace vbg {
namespace {

using namespace fixtures;

struct CoverCase {
  FiniteGroupoid base;
  std::vector<std::vector<ObjectId>> cover;
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

// Gauge-perturbed pullback of a random ruth over the base.
struct Perturbed {
  std::unique_ptr<TwoTermRuth> ruth;
  VBGroupoid vb;
};

Perturbed perturbed_pullback(Rng& rng, const CechGroupoid& cech) {
  const TwoTermRuth r = random_ruth(rng, *cech.projection.codomain);
  const TwoTermRuth pr = pullback_ruth(cech.projection, r);
  GaugeResult gauge = random_gauge(rng, pr);
  Perturbed out{std::move(gauge.ruth), {}};
  out.vb = grothendieck(*out.ruth);
  return out;
}

ArrowId kernel(const CechGroupoid& cech, ObjectId x, int j, int i) {
  return cech.arrow_id(cech.projection.codomain->unit(x), j, i);
}

bool symmetric(const VBGroupoid& v, const CechGroupoid& cech, const Cleavage& c) {
  const auto& G = *cech.projection.codomain;
  for (int x = 0; x < G.num_objects(); ++x) {
    for (int i : cech.indices_containing(x)) {
      for (int j : cech.indices_containing(x)) {
        const ArrowId a = kernel(cech, x, i, j), b = kernel(cech, x, j, i);
        const Matrix prod = v.mul(a, b, c.sigma[a] * v.t[b] * c.sigma[b], c.sigma[b]);
        if (!(prod == v.u[cech.object_id(x, i)])) return false;
      }
    }
  }
  return true;
}

std::size_t total_rank(const VBGroupoid& v) {
  std::size_t n = 0;
  for (auto d : v.dimE) n += d;
  return n;
}

TEST(Partition, UniformOnTwoCopies) {
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}});
  const auto l = uniform_partition(*cech);
  EXPECT_EQ(l(0, 0), Rational(1, 2));
  EXPECT_EQ(l(1, 0), Rational(1, 2));
  EXPECT_TRUE(check_partition(*cech, l).ok());
  const auto p = point_partition(*cech);
  EXPECT_EQ(p(0, 0), 1);
  EXPECT_EQ(p(1, 0), 0);
  EXPECT_TRUE(check_partition(*cech, p).ok());
}

TEST(Partition, RejectsBadWeights) {
  const auto g = pair(2);
  const auto cech = cech_groupoid(g, {{0}, {0, 1}});
  auto l = uniform_partition(*cech);
  l.weight[1][0] = 1;
  l.weight[1][1] = 0;
  EXPECT_FALSE(check_partition(*cech, l).ok());
  l = uniform_partition(*cech);
  l.weight[0][0] = -1;
  l.weight[0][1] = 2;
  EXPECT_FALSE(check_partition(*cech, l).ok());
  l = uniform_partition(*cech);
  l.weight[0][0] = 1;
  EXPECT_FALSE(check_partition(*cech, l).ok());
}

TEST(DescendMap, PullbackDescendsToItself) {
  Rng rng(11);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const TwoTermRuth r = random_ruth(rng, cc.base);
    GaugeResult gauge = random_gauge(rng, r);
    const VBGroupoid a = grothendieck(r), b = grothendieck(*gauge.ruth);
    const VBMap phi0 = grothendieck_map(gauge.morphism, a, b);
    const BaseChange pa = base_change(cech->projection, a), pb = base_change(cech->projection, b);
    const VBMap psi = pullback_map(*cech, phi0, *pa.vb, *pb.vb);
    const auto d = descend_map(*cech, psi, a, b, uniform_partition(*cech));
    EXPECT_TRUE(same_vbmap_data(d.phi, phi0));
    for (const auto& m : d.alpha) EXPECT_TRUE(m.is_zero());
  }
}

TEST(DescendMap, TwistedPullbacksDescend) {
  Rng rng(12);
  int fixtures = 0, nontrivial = 0;
  for (int round = 0; round < 9; ++round) {
    for (const auto& cc : cover_cases()) {
      const auto cech = cech_groupoid(cc.base, cc.cover);
      const TwoTermRuth r = random_ruth(rng, cc.base);
      GaugeResult gauge = random_gauge(rng, r);
      const VBGroupoid a = grothendieck(r), b = grothendieck(*gauge.ruth);
      const VBMap phi0 = grothendieck_map(gauge.morphism, a, b);
      const BaseChange pa = base_change(cech->projection, a);
      const BaseChange pb = base_change(cech->projection, b);
      const CoreData kb = core(*pb.vb);
      std::vector<Matrix> alpha0;
      for (int x = 0; x < cech->groupoid.num_objects(); ++x) {
        alpha0.push_back(random_matrix(rng, kb.dim(x), pa.vb->dimE[x]));
      }
      const VBMap psi = twist(pullback_map(*cech, phi0, *pa.vb, *pb.vb), alpha0);
      ASSERT_TRUE(check_vbmap(psi).ok());
      const auto l = round % 2 ? point_partition(*cech) : uniform_partition(*cech);
      const auto d = descend_map(*cech, psi, a, b, l);
      EXPECT_TRUE(check_vbmap(d.phi).ok());
      EXPECT_TRUE(check_vbmap_iso(d.iso, psi, d.pulled).ok());
      EXPECT_TRUE(same_vbmap_data(d.pulled, d.twisted));
      for (const auto& beta : d.beta) nontrivial += !beta.is_zero();
      ++fixtures;
    }
  }
  EXPECT_GE(fixtures, 50);
  EXPECT_GT(nontrivial, 0);
}

TEST(DescendMap, RejectsMapsOffThePullbacks) {
  Rng rng(13);
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}});
  const auto v = perturbed_pullback(rng, *cech);
  const VBGroupoid a = grothendieck(random_ruth(rng, pt));
  EXPECT_THROW(descend_map(*cech, identity_vbmap(v.vb), a, a, uniform_partition(*cech)),
               InvalidInput);
}

TEST(MakeInvertible, PullbackNeedsNoPadding) {
  Rng rng(14);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const VBGroupoid a = grothendieck(random_ruth(rng, cc.base));
    const BaseChange pa = base_change(cech->projection, a);
    const auto p = make_invertible(*pa.vb, *cech);
    EXPECT_EQ(total_rank(*p.omega), 0u);
    EXPECT_TRUE(check_kernel_invertible(*p.padded, *cech, p.cleavage).ok());
    EXPECT_TRUE(check_cleavage(*p.padded, p.cleavage).ok());
  }
}

TEST(MakeInvertible, RankDropGetsPadded) {
  Rng rng(15);
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}});
  const VBGroupoid a = grothendieck(random_ruth(rng, pt));
  const BaseChange pa = base_change(cech->projection, a);
  const VBGroupoid extra = acyclic_vb(cech->groupoid, {0, 1});
  const VBGroupoid v = direct_sum_vb(*pa.vb, extra);
  EXPECT_FALSE(check_kernel_invertible(v, *cech, choose_cleavage(v)).ok());
  const auto p = make_invertible(v, *cech);
  EXPECT_GT(total_rank(*p.omega), 0u);
  EXPECT_TRUE(check_vbgroupoid(*p.padded).ok());
  EXPECT_TRUE(is_acyclic(*p.omega));
  EXPECT_TRUE(check_kernel_invertible(*p.padded, *cech, p.cleavage).ok());
  EXPECT_TRUE(check_vbmap(p.projection).ok());
  EXPECT_TRUE(is_vb_morita(p.projection).is_vb_morita);
}

TEST(MakeInvertible, PerturbedPullbacks) {
  Rng rng(16);
  for (int round = 0; round < 3; ++round) {
    for (const auto& cc : cover_cases()) {
      const auto cech = cech_groupoid(cc.base, cc.cover);
      const auto v = perturbed_pullback(rng, *cech);
      const auto p = make_invertible(v.vb, *cech);
      EXPECT_TRUE(check_cleavage(*p.padded, p.cleavage).ok());
      EXPECT_TRUE(check_kernel_invertible(*p.padded, *cech, p.cleavage).ok());
      EXPECT_TRUE(is_vb_morita(p.projection).is_vb_morita);
    }
  }
}

TEST(Symmetrize, KernelLiftsBecomeMutuallyInverse) {
  Rng rng(17);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const auto v = perturbed_pullback(rng, *cech);
    const auto p = make_invertible(v.vb, *cech);
    const Cleavage sym = symmetrize_cleavage(*p.padded, *cech, p.cleavage);
    EXPECT_TRUE(check_cleavage(*p.padded, sym).ok());
    EXPECT_TRUE(symmetric(*p.padded, *cech, sym));
  }
}

TEST(Symmetrize, RejectsSingularKernelActions) {
  Rng rng(18);
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}});
  const BaseChange pa = base_change(cech->projection, grothendieck(random_ruth(rng, pt)));
  const VBGroupoid v = direct_sum_vb(*pa.vb, acyclic_vb(cech->groupoid, {0, 1}));
  EXPECT_THROW(symmetrize_cleavage(v, *cech, choose_cleavage(v)), InvalidInput);
}

TEST(Flatten, TwoCopiesOfAPoint) {
  Rng rng(19);
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}});
  for (int round = 0; round < 10; ++round) {
    const auto v = perturbed_pullback(rng, *cech);
    const auto p = make_invertible(v.vb, *cech);
    const Cleavage sym = symmetrize_cleavage(*p.padded, *cech, p.cleavage);
    const Cleavage flat = flatten_cleavage(*p.padded, *cech, sym, uniform_partition(*cech));
    EXPECT_TRUE(check_u_flat(*p.padded, *cech, flat).ok());
    EXPECT_TRUE(check_cleavage(*p.padded, flat).ok());
  }
}

TEST(Flatten, PointWeightsFlattenEveryCover) {
  Rng rng(20);
  int unflat_inputs = 0;
  for (int round = 0; round < 3; ++round) {
    for (const auto& cc : cover_cases()) {
      const auto cech = cech_groupoid(cc.base, cc.cover);
      const auto v = perturbed_pullback(rng, *cech);
      const auto p = make_invertible(v.vb, *cech);
      const Cleavage sym = symmetrize_cleavage(*p.padded, *cech, p.cleavage);
      unflat_inputs += !check_u_flat(*p.padded, *cech, sym).ok();
      const Cleavage flat = flatten_cleavage(*p.padded, *cech, sym, point_partition(*cech));
      EXPECT_TRUE(check_u_flat(*p.padded, *cech, flat).ok());
      EXPECT_TRUE(symmetric(*p.padded, *cech, flat));
    }
  }
  EXPECT_GT(unflat_inputs, 0);
}

TEST(DescendObject, RejectsUnflatCleavage) {
  Rng rng(21);
  const auto pt = point();
  const auto cech = cech_groupoid(pt, {{0}, {0}, {0}});
  for (int round = 0; round < 20; ++round) {
    const auto v = perturbed_pullback(rng, *cech);
    const auto p = make_invertible(v.vb, *cech);
    const Cleavage sym = symmetrize_cleavage(*p.padded, *cech, p.cleavage);
    if (check_u_flat(*p.padded, *cech, sym).ok()) continue;
    EXPECT_THROW(descend_object(*p.padded, *cech, sym), DescentError);
    return;
  }
  FAIL() << "no unflat fixture generated";
}

TEST(DescendObject, PullbackRoundTrip) {
  Rng rng(22);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const VBGroupoid a = grothendieck(random_ruth(rng, cc.base));
    const BaseChange pa = base_change(cech->projection, a);
    const auto d = descend(*pa.vb, *cech, point_partition(*cech));
    EXPECT_EQ(total_rank(*d.padding.omega), 0u);
    EXPECT_TRUE(same_vb(*d.object.descended, a));
    EXPECT_TRUE(vbmap_invertible(d.object.comparison));
  }
}

TEST(Descent, FullPipeline) {
  Rng rng(23);
  for (int round = 0; round < 3; ++round) {
    for (const auto& cc : cover_cases()) {
      const auto cech = cech_groupoid(cc.base, cc.cover);
      const auto v = perturbed_pullback(rng, *cech);
      const auto d = descend(v.vb, *cech, point_partition(*cech));
      EXPECT_TRUE(check_vbgroupoid(*d.object.descended).ok());
      EXPECT_TRUE(check_u_flat(*d.padding.padded, *cech, d.flat).ok());
      EXPECT_TRUE(check_vbmap(d.object.comparison).ok());
      EXPECT_TRUE(vbmap_invertible(d.object.comparison));
      EXPECT_TRUE(is_vb_morita(d.padding.projection).is_vb_morita);
    }
  }
}

TEST(Descent, RankDropPipeline) {
  Rng rng(24);
  const auto g = pair(2);
  const auto cech = cech_groupoid(g, {{0, 1}, {1}});
  const BaseChange pa = base_change(cech->projection, grothendieck(random_ruth(rng, g)));
  std::vector<std::size_t> dims(cech->groupoid.num_objects(), 0);
  dims[cech->object_id(1, 1)] = 2;
  const VBGroupoid v = direct_sum_vb(*pa.vb, acyclic_vb(cech->groupoid, dims));
  const auto d = descend(v, *cech, point_partition(*cech));
  EXPECT_GT(total_rank(*d.padding.omega), 0u);
  EXPECT_TRUE(vbmap_invertible(d.object.comparison));
  EXPECT_TRUE(check_vbgroupoid(*d.object.descended).ok());
}

}  // namespace
}  // namespace vbg

namespace vbg {
namespace {

TEST(Descent, SingleSetCoverIsRelabeling) {
  Rng rng(25);
  for (const auto& g : {fixtures::pair(2), fixtures::s3_on_three_points()}) {
    std::vector<ObjectId> all(g.num_objects());
    for (int x = 0; x < g.num_objects(); ++x) all[x] = x;
    const auto cech = cech_groupoid(g, {all});
    const TwoTermRuth r = random_ruth(rng, g);
    GaugeResult gauge = random_gauge(rng, r);
    const VBGroupoid a = grothendieck(r), b = grothendieck(*gauge.ruth);
    const VBMap phi0 = grothendieck_map(gauge.morphism, a, b);
    const BaseChange pa = base_change(cech->projection, a);
    const BaseChange pb = base_change(cech->projection, b);
    const auto d = descend_map(*cech, pullback_map(*cech, phi0, *pa.vb, *pb.vb), a, b,
                               uniform_partition(*cech));
    EXPECT_TRUE(same_vbmap_data(d.phi, phi0));
    const auto o = descend(*pa.vb, *cech, uniform_partition(*cech));
    EXPECT_TRUE(same_vb(*o.object.descended, a));
    for (const auto& m : o.object.comparison.obj) EXPECT_TRUE(m.is_identity());
    for (const auto& m : o.object.comparison.arr) EXPECT_TRUE(m.is_identity());
  }
}

TEST(Descent, PulledBackCleavageIsAlreadyDescentData) {
  Rng rng(26);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const VBGroupoid a = dual_vb(grothendieck(random_ruth(rng, cc.base)));
    const Cleavage c0 = choose_cleavage(a);
    const BaseChange pa = base_change(cech->projection, a);
    const Cleavage c = pullback_cleavage(*cech, c0);
    ASSERT_TRUE(check_cleavage(*pa.vb, c).ok());
    EXPECT_TRUE(symmetric(*pa.vb, *cech, c));
    EXPECT_TRUE(check_u_flat(*pa.vb, *cech, c).ok());
    EXPECT_EQ(symmetrize_cleavage(*pa.vb, *cech, c).sigma, c.sigma);
    EXPECT_EQ(flatten_cleavage(*pa.vb, *cech, c, uniform_partition(*cech)).sigma, c.sigma);
    const auto d = descend_object(*pa.vb, *cech, c);
    EXPECT_TRUE(same_vb(*d.descended, a));
    for (const auto& m : d.comparison.obj) EXPECT_TRUE(m.is_identity());
    for (const auto& m : d.comparison.arr) EXPECT_TRUE(m.is_identity());
  }
}

TEST(Descent, SymmetrizeAndFlattenAreIdempotent) {
  Rng rng(27);
  for (const auto& cc : cover_cases()) {
    const auto cech = cech_groupoid(cc.base, cc.cover);
    const auto v = perturbed_pullback(rng, *cech);
    const auto p = make_invertible(v.vb, *cech);
    const VBGroupoid& w = *p.padded;
    const Cleavage sym = symmetrize_cleavage(w, *cech, p.cleavage);
    EXPECT_EQ(symmetrize_cleavage(w, *cech, sym).sigma, sym.sigma);
    const Cleavage flat = flatten_cleavage(w, *cech, sym, point_partition(*cech));
    EXPECT_EQ(flatten_cleavage(w, *cech, flat, uniform_partition(*cech)).sigma, flat.sigma);
    EXPECT_EQ(symmetrize_cleavage(w, *cech, flat).sigma, flat.sigma);
  }
}

}  // namespace
}  // namespace vbg
