#include "vbg/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace vbg {

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations) {
    violations.push_back({prefix.empty() ? v.axiom : prefix + ": " + v.axiom, v.witnesses});
  }
}

std::string Report::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t k = 0; k < violations.size(); ++k) {
    if (k) os << "; ";
    os << violations[k].axiom;
    if (!violations[k].witnesses.empty()) {
      os << " [";
      for (std::size_t w = 0; w < violations[k].witnesses.size(); ++w) {
        os << (w ? "," : "") << violations[k].witnesses[w];
      }
      os << "]";
    }
  }
  return os.str();
}

FiniteGroupoid::FiniteGroupoid(Data data) : d_(std::move(data)) {
  const int n = num_objects();
  const int m = num_arrows();
  if (static_cast<int>(d_.source.size()) != m || static_cast<int>(d_.target.size()) != m ||
      static_cast<int>(d_.inverse.size()) != m || static_cast<int>(d_.unit.size()) != n ||
      d_.table.size() != static_cast<std::size_t>(m) * m) {
    throw InvalidInput("groupoid data has inconsistent sizes");
  }
  auto in_range = [](int v, int bound) { return v >= 0 && v < bound; };
  for (int g = 0; g < m; ++g) {
    if (!in_range(d_.source[g], n) || !in_range(d_.target[g], n) ||
        !in_range(d_.inverse[g], m)) {
      throw InvalidInput("arrow " + d_.arrow_names[g] + " refers to an unknown id");
    }
  }
  for (int x = 0; x < n; ++x) {
    if (!in_range(d_.unit[x], m)) throw InvalidInput("unit refers to an unknown arrow");
  }
  for (auto v : d_.table) {
    if (v != kNone && !in_range(v, m)) throw InvalidInput("composition refers to an unknown arrow");
  }
  for (int x = 0; x < n; ++x) {
    if (!object_index_.emplace(d_.object_names[x], x).second) {
      throw InvalidInput("duplicate object name " + d_.object_names[x]);
    }
  }
  for (int g = 0; g < m; ++g) {
    if (!arrow_index_.emplace(d_.arrow_names[g], g).second) {
      throw InvalidInput("duplicate arrow name " + d_.arrow_names[g]);
    }
  }
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h) {
      if (composable(g, h)) pairs_.emplace_back(g, h);
    }
  }
}

FiniteGroupoid FiniteGroupoid::build(std::vector<std::string> object_names,
                                     std::vector<std::string> arrow_names,
                                     std::vector<ObjectId> source,
                                     std::vector<ObjectId> target,
                                     std::vector<ArrowId> unit,
                                     std::vector<ArrowId> inverse,
                                     const std::function<ArrowId(ArrowId, ArrowId)>& compose) {
  const std::size_t m = arrow_names.size();
  std::vector<ArrowId> table(m * m, kNone);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = 0; h < m; ++h) {
      if (source[g] == target[h]) table[g * m + h] = compose(static_cast<int>(g), static_cast<int>(h));
    }
  }
  return FiniteGroupoid(Data{std::move(object_names), std::move(arrow_names), std::move(source),
                             std::move(target), std::move(unit), std::move(inverse),
                             std::move(table)});
}

ArrowId FiniteGroupoid::compose(ArrowId g, ArrowId h) const {
  if (!composable(g, h)) {
    throw InvalidInput("arrows " + arrow_name(g) + " and " + arrow_name(h) + " are not composable");
  }
  const ArrowId gh = table(g, h);
  if (gh == kNone) {
    throw InvalidInput("composition of " + arrow_name(g) + " and " + arrow_name(h) + " is undefined");
  }
  return gh;
}

ObjectId FiniteGroupoid::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw InvalidInput("unknown object " + name);
  return it->second;
}

ArrowId FiniteGroupoid::find_arrow(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) throw InvalidInput("unknown arrow " + name);
  return it->second;
}

std::vector<ArrowId> FiniteGroupoid::hom(ObjectId y, ObjectId x) const {
  std::vector<ArrowId> out;
  for (int g = 0; g < num_arrows(); ++g) {
    if (source(g) == x && target(g) == y) out.push_back(g);
  }
  return out;
}

void FiniteGroupoid::set_table_entry(ArrowId g, ArrowId h, ArrowId gh) {
  d_.table[g * num_arrows() + h] = gh;
}

GroupoidMap identity_map(const FiniteGroupoid& g) {
  GroupoidMap f{&g, &g, {}, {}};
  f.object_map.resize(g.num_objects());
  f.arrow_map.resize(g.num_arrows());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  std::iota(f.arrow_map.begin(), f.arrow_map.end(), 0);
  return f;
}

GroupoidMap compose_maps(const GroupoidMap& f2, const GroupoidMap& f1) {
  if (f1.codomain != f2.domain) throw InvalidInput("functors are not composable");
  GroupoidMap f{f1.domain, f2.codomain, {}, {}};
  for (auto x : f1.object_map) f.object_map.push_back(f2.obj(x));
  for (auto g : f1.arrow_map) f.arrow_map.push_back(f2.arr(g));
  return f;
}

bool same_map(const GroupoidMap& a, const GroupoidMap& b) {
  return a.object_map == b.object_map && a.arrow_map == b.arrow_map;
}

Report validate_groupoid(const FiniteGroupoid& g) {
  Report r;
  const int n = g.num_objects();
  const int m = g.num_arrows();
  for (int x = 0; x < n; ++x) {
    const ArrowId u = g.unit(x);
    if (g.source(u) != x || g.target(u) != x) r.add("unit endpoints", {g.object_name(x)});
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const bool want = g.composable(a, b);
      const ArrowId ab = g.table(a, b);
      if (want != (ab != kNone)) {
        r.add("composition domain", {g.arrow_name(a), g.arrow_name(b)});
        continue;
      }
      if (want && (g.source(ab) != g.source(b) || g.target(ab) != g.target(a))) {
        r.add("composition endpoints", {g.arrow_name(a), g.arrow_name(b)});
      }
    }
  }
  if (!r.ok()) return r;
  for (int a = 0; a < m; ++a) {
    if (g.table(a, g.unit(g.source(a))) != a || g.table(g.unit(g.target(a)), a) != a) {
      r.add("unit law", {g.arrow_name(a)});
    }
    const ArrowId ia = g.inverse(a);
    if (g.source(ia) != g.target(a) || g.target(ia) != g.source(a) ||
        g.table(ia, a) != g.unit(g.source(a)) || g.table(a, ia) != g.unit(g.target(a))) {
      r.add("inverse", {g.arrow_name(a)});
    }
  }
  for (auto [a, b] : g.composable_pairs()) {
    const ArrowId ab = g.table(a, b);
    for (int c = 0; c < m; ++c) {
      if (!g.composable(b, c)) continue;
      if (g.table(ab, c) != g.table(a, g.table(b, c))) {
        r.add("associativity", {g.arrow_name(a), g.arrow_name(b), g.arrow_name(c)});
      }
    }
  }
  return r;
}

Report validate_functor(const GroupoidMap& f) {
  Report r;
  const auto& d = *f.domain;
  const auto& c = *f.codomain;
  if (static_cast<int>(f.object_map.size()) != d.num_objects() ||
      static_cast<int>(f.arrow_map.size()) != d.num_arrows()) {
    r.add("functor size");
    return r;
  }
  for (auto x : f.object_map) {
    if (x < 0 || x >= c.num_objects()) {
      r.add("object image out of range");
      return r;
    }
  }
  for (auto g : f.arrow_map) {
    if (g < 0 || g >= c.num_arrows()) {
      r.add("arrow image out of range");
      return r;
    }
  }
  for (int g = 0; g < d.num_arrows(); ++g) {
    if (c.source(f.arr(g)) != f.obj(d.source(g))) r.add("source", {d.arrow_name(g)});
    if (c.target(f.arr(g)) != f.obj(d.target(g))) r.add("target", {d.arrow_name(g)});
    if (f.arr(d.inverse(g)) != c.inverse(f.arr(g))) r.add("inverse", {d.arrow_name(g)});
  }
  for (int x = 0; x < d.num_objects(); ++x) {
    if (f.arr(d.unit(x)) != c.unit(f.obj(x))) r.add("unit", {d.object_name(x)});
  }
  if (!r.ok()) return r;
  for (auto [a, b] : d.composable_pairs()) {
    if (f.arr(d.table(a, b)) != c.table(f.arr(a), f.arr(b))) {
      r.add("composition", {d.arrow_name(a), d.arrow_name(b)});
    }
  }
  return r;
}

OrbitData orbits_and_isotropy(const FiniteGroupoid& g) {
  const int n = g.num_objects();
  OrbitData out;
  out.orbit_of.assign(n, -1);
  out.isotropy.resize(n);
  for (int x = 0; x < n; ++x) {
    if (out.orbit_of[x] != -1) continue;
    const int id = static_cast<int>(out.orbits.size());
    std::vector<ObjectId> members;
    for (int a = 0; a < g.num_arrows(); ++a) {
      if (g.source(a) == x) members.push_back(g.target(a));
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto y : members) out.orbit_of[y] = id;
    out.orbits.push_back(std::move(members));
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (g.source(a) == g.target(a)) out.isotropy[g.source(a)].push_back(a);
  }
  return out;
}

MoritaCertificate is_morita(const GroupoidMap& f) {
  const Report fr = validate_functor(f);
  if (!fr.ok()) throw InvalidInput("invalid functor: " + fr.summary());
  const auto& d = *f.domain;
  const auto& c = *f.codomain;
  MoritaCertificate cert;
  const OrbitData od = orbits_and_isotropy(d);
  const OrbitData oc = orbits_and_isotropy(c);

  cert.orbit_map.assign(od.orbits.size(), -1);
  for (std::size_t o = 0; o < od.orbits.size(); ++o) {
    cert.orbit_map[o] = oc.orbit_of[f.obj(od.orbits[o].front())];
  }
  std::set<int> hit(cert.orbit_map.begin(), cert.orbit_map.end());
  cert.orbit_bijection =
      hit.size() == cert.orbit_map.size() && hit.size() == oc.orbits.size();
  if (!cert.orbit_bijection) cert.witnesses.push_back("orbit map is not bijective");

  cert.isotropy_isomorphisms = true;
  for (int x = 0; x < d.num_objects(); ++x) {
    const auto& iso = od.isotropy[x];
    std::set<ArrowId> image;
    for (auto a : iso) image.insert(f.arr(a));
    // A homomorphism of finite groups is an isomorphism iff it is bijective.
    if (image.size() != iso.size() || image.size() != oc.isotropy[f.obj(x)].size()) {
      cert.isotropy_isomorphisms = false;
      cert.witnesses.push_back("isotropy at " + d.object_name(x));
    }
  }

  cert.fully_faithful = true;
  for (int y = 0; y < d.num_objects() && cert.fully_faithful; ++y) {
    for (int x = 0; x < d.num_objects(); ++x) {
      const auto h = d.hom(y, x);
      std::set<ArrowId> image;
      for (auto a : h) image.insert(f.arr(a));
      if (image.size() != h.size() || image.size() != c.hom(f.obj(y), f.obj(x)).size()) {
        cert.fully_faithful = false;
        break;
      }
    }
  }
  cert.essentially_surjective = true;
  std::vector<bool> reached(c.num_objects(), false);
  for (int a = 0; a < c.num_arrows(); ++a) {
    if (std::find(f.object_map.begin(), f.object_map.end(), c.source(a)) != f.object_map.end()) {
      reached[c.target(a)] = true;
    }
  }
  for (int y = 0; y < c.num_objects(); ++y) {
    if (!reached[y]) cert.essentially_surjective = false;
  }
  cert.is_morita = cert.orbit_bijection && cert.isotropy_isomorphisms;
  return cert;
}

Chain face(const FiniteGroupoid& g, const Chain& c, int i) {
  const int p = static_cast<int>(c.degree());
  if (p == 0 || i < 0 || i > p) throw InvalidInput("face index out of range");
  Chain out;
  if (p == 1) {
    out.object = i == 0 ? g.source(c.arrows[0]) : g.target(c.arrows[0]);
    return out;
  }
  if (i == 0) {
    out.arrows.assign(c.arrows.begin() + 1, c.arrows.end());
  } else if (i == p) {
    out.arrows.assign(c.arrows.begin(), c.arrows.end() - 1);
  } else {
    out.arrows = c.arrows;
    out.arrows[i - 1] = g.compose(c.arrows[i - 1], c.arrows[i]);
    out.arrows.erase(out.arrows.begin() + i);
  }
  out.object = g.target(out.arrows.front());
  return out;
}

NerveStrings::NerveStrings(const FiniteGroupoid& g, int p_max) : g_(&g) {
  if (p_max < 0) throw InvalidInput("p_max must be non-negative");
  strings_.resize(p_max + 1);
  index_.resize(p_max + 1);
  for (int x = 0; x < g.num_objects(); ++x) strings_[0].push_back({x, {}});
  if (p_max >= 1) {
    for (int a = 0; a < g.num_arrows(); ++a) strings_[1].push_back({g.target(a), {a}});
  }
  for (int p = 2; p <= p_max; ++p) {
    for (const auto& c : strings_[p - 1]) {
      const ObjectId s = g.source(c.arrows.back());
      for (int a = 0; a < g.num_arrows(); ++a) {
        if (g.target(a) != s) continue;
        Chain next = c;
        next.arrows.push_back(a);
        strings_[p].push_back(std::move(next));
      }
    }
  }
  for (int p = 0; p <= p_max; ++p) {
    for (std::size_t k = 0; k < strings_[p].size(); ++k) {
      const auto& c = strings_[p][k];
      index_[p].emplace(p == 0 ? std::vector<int>{c.object} : c.arrows, k);
    }
  }
}

std::size_t NerveStrings::index_of(const Chain& c) const {
  const int p = static_cast<int>(c.degree());
  const auto& idx = index_.at(p);
  auto it = idx.find(p == 0 ? std::vector<int>{c.object} : c.arrows);
  if (it == idx.end()) throw InvalidInput("string is not in the nerve");
  return it->second;
}

Chain NerveStrings::face(const Chain& c, int i) const { return vbg::face(*g_, c, i); }

std::unique_ptr<ArrowGroupoid> arrow_groupoid(const FiniteGroupoid& g) {
  auto out = std::make_unique<ArrowGroupoid>();
  const int m = g.num_arrows();
  std::vector<std::array<ArrowId, 3>> triples;
  for (int g2 = 0; g2 < m; ++g2) {
    for (int h = 0; h < m; ++h) {
      for (int g1 = 0; g1 < m; ++g1) {
        if (g.source(h) == g.target(g1) && g.target(h) == g.source(g2)) {
          triples.push_back({g2, h, g1});
        }
      }
    }
  }
  std::map<std::array<ArrowId, 3>, ArrowId> index;
  for (std::size_t k = 0; k < triples.size(); ++k) index[triples[k]] = static_cast<int>(k);

  std::vector<std::string> onames, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit(m), inv;
  for (int a = 0; a < m; ++a) onames.push_back(g.arrow_name(a));
  for (const auto& [g2, h, g1] : triples) {
    anames.push_back("(" + g.arrow_name(g2) + "," + g.arrow_name(h) + "," + g.arrow_name(g1) + ")");
    src.push_back(g1);
    tgt.push_back(g2);
    const ArrowId k = g.compose(g.inverse(g1), g.compose(g.inverse(h), g.inverse(g2)));
    inv.push_back(index.at({g1, k, g2}));
  }
  for (int a = 0; a < m; ++a) unit[a] = index.at({a, g.inverse(a), a});
  out->groupoid = FiniteGroupoid::build(
      std::move(onames), std::move(anames), std::move(src), std::move(tgt), std::move(unit),
      std::move(inv), [&](ArrowId x, ArrowId y) {
        const auto& [a2, h2, a1] = triples[x];
        const auto& [b2, h1, b1] = triples[y];
        return index.at({a2, g.compose(h2, g.compose(a1, h1)), b1});
      });
  out->triples = triples;

  const FiniteGroupoid& gi = out->groupoid;
  out->sigma = {&gi, &g, {}, {}};
  out->tau = {&gi, &g, {}, {}};
  for (int a = 0; a < m; ++a) {
    out->sigma.object_map.push_back(g.source(a));
    out->tau.object_map.push_back(g.target(a));
  }
  for (const auto& [g2, h, g1] : out->triples) {
    out->sigma.arrow_map.push_back(g.compose(h, g1));
    out->tau.arrow_map.push_back(g.compose(g2, h));
  }
  out->mu = {&g, &gi, {}, {}};
  for (int x = 0; x < g.num_objects(); ++x) out->mu.object_map.push_back(g.unit(x));
  for (int a = 0; a < m; ++a) {
    out->mu.arrow_map.push_back(index.at({g.unit(g.target(a)), a, g.unit(g.source(a))}));
  }
  return out;
}

ObjectId CechGroupoid::object_id(ObjectId x, int i) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), std::make_pair(x, i));
  if (it == objects.end() || *it != std::make_pair(x, i)) {
    throw InvalidInput("object is not in the cover");
  }
  return static_cast<int>(it - objects.begin());
}

ArrowId CechGroupoid::arrow_id(ArrowId g, int j, int i) const {
  const std::array<int, 3> key{g, j, i};
  auto it = std::lower_bound(arrows.begin(), arrows.end(), key);
  if (it == arrows.end() || *it != key) throw InvalidInput("arrow is not in the cover");
  return static_cast<int>(it - arrows.begin());
}

std::vector<int> CechGroupoid::indices_containing(ObjectId x) const {
  std::vector<int> out;
  for (const auto& [y, i] : objects) {
    if (y == x) out.push_back(i);
  }
  return out;
}

int CechGroupoid::min_index(ObjectId x) const {
  const auto idx = indices_containing(x);
  if (idx.empty()) throw InvalidInput("object is not covered");
  return idx.front();
}

std::unique_ptr<CechGroupoid> cech_groupoid(const FiniteGroupoid& g,
                                            std::vector<std::vector<ObjectId>> cover) {
  auto out = std::make_unique<CechGroupoid>();
  std::vector<bool> covered(g.num_objects(), false);
  for (auto& u : cover) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (auto x : u) {
      if (x < 0 || x >= g.num_objects()) throw InvalidInput("cover names an unknown object");
      covered[x] = true;
    }
  }
  if (cover.empty() || std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw InvalidInput("sets do not cover the objects");
  }
  out->cover = cover;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    for (auto x : cover[i]) out->objects.emplace_back(x, static_cast<int>(i));
  }
  std::sort(out->objects.begin(), out->objects.end());
  auto member = [&](ObjectId x, int i) {
    return std::binary_search(cover[i].begin(), cover[i].end(), x);
  };
  const int nc = static_cast<int>(cover.size());
  for (int a = 0; a < g.num_arrows(); ++a) {
    for (int j = 0; j < nc; ++j) {
      if (!member(g.target(a), j)) continue;
      for (int i = 0; i < nc; ++i) {
        if (member(g.source(a), i)) out->arrows.push_back({a, j, i});
      }
    }
  }
  const CechGroupoid& cg = *out;
  std::vector<std::string> onames, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit, inv;
  for (const auto& [x, i] : cg.objects) {
    onames.push_back(g.object_name(x) + "@" + std::to_string(i));
    unit.push_back(cg.arrow_id(g.unit(x), i, i));
  }
  for (const auto& [a, j, i] : cg.arrows) {
    anames.push_back(g.arrow_name(a) + "@" + std::to_string(j) + "," + std::to_string(i));
    src.push_back(cg.object_id(g.source(a), i));
    tgt.push_back(cg.object_id(g.target(a), j));
    inv.push_back(cg.arrow_id(g.inverse(a), i, j));
  }
  out->groupoid = FiniteGroupoid::build(
      std::move(onames), std::move(anames), std::move(src), std::move(tgt), std::move(unit),
      std::move(inv), [&](ArrowId x, ArrowId y) {
        const auto& [a, k, j] = cg.arrows[x];
        const auto& [b, j2, i] = cg.arrows[y];
        (void)j2;
        return cg.arrow_id(g.compose(a, b), k, i);
      });
  out->projection = {&out->groupoid, &g, {}, {}};
  for (const auto& [x, i] : out->objects) out->projection.object_map.push_back(x);
  for (std::size_t k = 0; k < out->arrows.size(); ++k) {
    const auto& [a, j, i] = out->arrows[k];
    out->projection.arrow_map.push_back(a);
    if (g.is_unit(a)) out->kernel_arrows.push_back(static_cast<int>(k));
  }
  return out;
}

namespace fixtures {

FiniteGroupoid point() {
  return FiniteGroupoid::build({"x"}, {"e"}, {0}, {0}, {0}, {0},
                               [](ArrowId, ArrowId) { return 0; });
}

FiniteGroupoid cyclic(int n) {
  if (n < 1) throw InvalidInput("cyclic order must be positive");
  std::vector<std::string> names;
  std::vector<ArrowId> inv;
  for (int k = 0; k < n; ++k) {
    names.push_back(k == 0 ? "e" : "r" + std::to_string(k));
    inv.push_back((n - k) % n);
  }
  if (n == 2) names[1] = "tau";
  return FiniteGroupoid::build({"x"}, names, std::vector<ObjectId>(n, 0),
                               std::vector<ObjectId>(n, 0), {0}, inv,
                               [n](ArrowId a, ArrowId b) { return (a + b) % n; });
}

FiniteGroupoid pair(int n) {
  if (n < 1) throw InvalidInput("pair groupoid needs an object");
  std::vector<std::string> onames, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit(n), inv;
  for (int x = 0; x < n; ++x) onames.push_back(std::string(1, static_cast<char>('a' + x)));
  // Arrow (y, x) : x -> y has id y*n + x.
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      anames.push_back(onames[y] + onames[x]);
      src.push_back(x);
      tgt.push_back(y);
      inv.push_back(x * n + y);
    }
  }
  for (int x = 0; x < n; ++x) unit[x] = x * n + x;
  return FiniteGroupoid::build(onames, anames, src, tgt, unit, inv,
                               [n](ArrowId a, ArrowId b) { return (a / n) * n + (b % n); });
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int na = a.num_objects();
  const int ma = a.num_arrows();
  std::vector<std::string> onames, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit, inv;
  for (int x = 0; x < na; ++x) onames.push_back("0." + a.object_name(x));
  for (int x = 0; x < b.num_objects(); ++x) onames.push_back("1." + b.object_name(x));
  for (int g = 0; g < ma; ++g) {
    anames.push_back("0." + a.arrow_name(g));
    src.push_back(a.source(g));
    tgt.push_back(a.target(g));
    inv.push_back(a.inverse(g));
  }
  for (int g = 0; g < b.num_arrows(); ++g) {
    anames.push_back("1." + b.arrow_name(g));
    src.push_back(na + b.source(g));
    tgt.push_back(na + b.target(g));
    inv.push_back(ma + b.inverse(g));
  }
  for (int x = 0; x < na; ++x) unit.push_back(a.unit(x));
  for (int x = 0; x < b.num_objects(); ++x) unit.push_back(ma + b.unit(x));
  return FiniteGroupoid::build(onames, anames, src, tgt, unit, inv, [&](ArrowId g, ArrowId h) {
    return g < ma ? a.compose(g, h) : ma + b.compose(g - ma, h - ma);
  });
}

FiniteGroupoid product(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int nb = b.num_objects();
  const int mb = b.num_arrows();
  std::vector<std::string> onames, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit, inv;
  for (int x = 0; x < a.num_objects(); ++x) {
    for (int y = 0; y < nb; ++y) {
      onames.push_back(a.object_name(x) + "." + b.object_name(y));
      unit.push_back(a.unit(x) * mb + b.unit(y));
    }
  }
  for (int g = 0; g < a.num_arrows(); ++g) {
    for (int h = 0; h < mb; ++h) {
      anames.push_back(a.arrow_name(g) + "." + b.arrow_name(h));
      src.push_back(a.source(g) * nb + b.source(h));
      tgt.push_back(a.target(g) * nb + b.target(h));
      inv.push_back(a.inverse(g) * mb + b.inverse(h));
    }
  }
  return FiniteGroupoid::build(onames, anames, src, tgt, unit, inv, [&](ArrowId x, ArrowId y) {
    return a.compose(x / mb, y / mb) * mb + b.compose(x % mb, y % mb);
  });
}

FiniteGroupoid s3_on_three_points() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto perm_index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  // Arrow (σ, x) : x -> σ(x) has id 3*σ + x.
  std::vector<std::string> onames{"0", "1", "2"}, anames;
  std::vector<ObjectId> src, tgt;
  std::vector<ArrowId> unit, inv;
  for (int s = 0; s < 6; ++s) {
    std::array<int, 3> q{};
    for (int k = 0; k < 3; ++k) q[perms[s][k]] = k;
    const int si = perm_index(q);
    for (int x = 0; x < 3; ++x) {
      anames.push_back("p" + std::to_string(perms[s][0]) + std::to_string(perms[s][1]) +
                       std::to_string(perms[s][2]) + "@" + std::to_string(x));
      src.push_back(x);
      tgt.push_back(perms[s][x]);
      inv.push_back(3 * si + perms[s][x]);
    }
  }
  for (int x = 0; x < 3; ++x) unit.push_back(x);
  return FiniteGroupoid::build(onames, anames, src, tgt, unit, inv, [&](ArrowId a, ArrowId b) {
    const auto& s = perms[a / 3];
    const auto& t = perms[b / 3];
    std::array<int, 3> st{s[t[0]], s[t[1]], s[t[2]]};
    return 3 * perm_index(st) + b % 3;
  });
}

GroupoidMap collapse(const FiniteGroupoid& g, const FiniteGroupoid& pt) {
  return {&g, &pt, std::vector<ObjectId>(g.num_objects(), 0),
          std::vector<ArrowId>(g.num_arrows(), 0)};
}

}  // namespace fixtures

}  // namespace vbg
