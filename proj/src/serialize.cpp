#include "vbg/serialize.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace vbg {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field ") + key);
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ParseError(std::string("field ") + key + " must be a string");
  return v.get<std::string>();
}

const Json& object_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_object()) throw ParseError(std::string("field ") + key + " must be an object");
  return v;
}

std::size_t count_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError("expected a nonnegative integer at " + where);
  }
  return static_cast<std::size_t>(v.get<long long>());
}

ObjectId try_object(const FiniteGroupoid& g, const std::string& name) {
  try {
    return g.find_object(name);
  } catch (const InvalidInput&) {
    return kNone;
  }
}

ArrowId try_arrow(const FiniteGroupoid& g, const std::string& name) {
  try {
    return g.find_arrow(name);
  } catch (const InvalidInput&) {
    return kNone;
  }
}

ObjectId object_ref(const FiniteGroupoid& g, const Json& v) {
  if (!v.is_string()) throw ParseError("object references are names");
  const ObjectId x = try_object(g, v.get<std::string>());
  if (x == kNone) throw ParseError("unknown object " + v.get<std::string>());
  return x;
}

ArrowId arrow_ref(const FiniteGroupoid& g, const Json& v) {
  if (!v.is_string()) throw ParseError("arrow references are names");
  const ArrowId a = try_arrow(g, v.get<std::string>());
  if (a == kNone) throw ParseError("unknown arrow " + v.get<std::string>());
  return a;
}

std::pair<ArrowId, ArrowId> pair_key(const FiniteGroupoid& g, const std::string& key) {
  for (std::size_t pos = key.find(','); pos != std::string::npos; pos = key.find(',', pos + 1)) {
    const ArrowId a = try_arrow(g, key.substr(0, pos));
    const ArrowId b = try_arrow(g, key.substr(pos + 1));
    if (a != kNone && b != kNone) return {a, b};
  }
  throw ParseError("key " + key + " does not name a pair of arrows");
}

std::string pair_name(const FiniteGroupoid& g, ArrowId a, ArrowId b) {
  return g.arrow_name(a) + "," + g.arrow_name(b);
}

/// Per-object counts keyed by name; every object required.
std::vector<std::size_t> object_counts(const FiniteGroupoid& g, const Json& j, const char* key) {
  const Json& m = object_field(j, key);
  std::vector<std::size_t> out(g.num_objects());
  std::vector<bool> seen(g.num_objects(), false);
  for (const auto& [name, v] : m.items()) {
    const ObjectId x = object_ref(g, Json(name));
    out[x] = count_value(v, std::string(key) + "." + name);
    seen[x] = true;
  }
  for (int x = 0; x < g.num_objects(); ++x) {
    if (!seen[x]) throw ParseError(std::string(key) + " lacks object " + g.object_name(x));
  }
  return out;
}

std::vector<std::size_t> arrow_counts(const FiniteGroupoid& g, const Json& j, const char* key) {
  const Json& m = object_field(j, key);
  std::vector<std::size_t> out(g.num_arrows());
  std::vector<bool> seen(g.num_arrows(), false);
  for (const auto& [name, v] : m.items()) {
    const ArrowId a = arrow_ref(g, Json(name));
    out[a] = count_value(v, std::string(key) + "." + name);
    seen[a] = true;
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (!seen[a]) throw ParseError(std::string(key) + " lacks arrow " + g.arrow_name(a));
  }
  return out;
}

/// Reads {name: matrix}; `shape` gives the expected size, `fallback` the
/// value for an omitted key (nullopt when the key is required).
template <class Shape, class Fallback>
std::vector<Matrix> matrices(const Json& j, const char* key, int count,
                             const std::function<int(const std::string&)>& index,
                             const std::function<std::string(int)>& name, Shape shape,
                             Fallback fallback) {
  const Json& m = object_field(j, key);
  std::vector<std::optional<Matrix>> read(count);
  for (const auto& [k, v] : m.items()) {
    const int i = index(k);
    const auto [r, c] = shape(i);
    read[i] = matrix_from_json(v, r, c);
  }
  std::vector<Matrix> out;
  for (int i = 0; i < count; ++i) {
    if (read[i]) {
      out.push_back(std::move(*read[i]));
    } else if (auto f = fallback(i)) {
      out.push_back(std::move(*f));
    } else {
      throw ParseError(std::string(key) + " lacks entry " + name(i));
    }
  }
  return out;
}

std::function<int(const std::string&)> object_index(const FiniteGroupoid& g) {
  return [&g](const std::string& k) { return object_ref(g, Json(k)); };
}
std::function<int(const std::string&)> arrow_index(const FiniteGroupoid& g) {
  return [&g](const std::string& k) { return arrow_ref(g, Json(k)); };
}
std::function<std::string(int)> object_namer(const FiniteGroupoid& g) {
  return [&g](int x) { return g.object_name(x); };
}
std::function<std::string(int)> arrow_namer(const FiniteGroupoid& g) {
  return [&g](int a) { return g.arrow_name(a); };
}

auto required() {
  return [](int) { return std::optional<Matrix>(); };
}

Json object_matrices(const FiniteGroupoid& g, const std::vector<Matrix>& ms) {
  Json out = Json::object();
  for (int x = 0; x < g.num_objects(); ++x) out[g.object_name(x)] = matrix_to_json(ms[x]);
  return out;
}

Json arrow_matrices(const FiniteGroupoid& g, const std::vector<Matrix>& ms, bool skip_units) {
  Json out = Json::object();
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (skip_units && g.is_unit(a)) continue;
    out[g.arrow_name(a)] = matrix_to_json(ms[a]);
  }
  return out;
}

Json object_counts_json(const FiniteGroupoid& g, const std::vector<std::size_t>& d) {
  Json out = Json::object();
  for (int x = 0; x < g.num_objects(); ++x) out[g.object_name(x)] = d[x];
  return out;
}

template <class T>
const T* as(const Instance::Entry& e) {
  const auto* p = std::get_if<std::unique_ptr<T>>(&e.payload);
  return p ? p->get() : nullptr;
}

}  // namespace

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational rational_from_string(const std::string& s) {
  static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
  if (!std::regex_match(s, pattern)) throw ParseError("malformed rational " + s);
  const auto slash = s.find('/');
  if (slash != std::string::npos && s.find_first_not_of('0', slash + 1) == std::string::npos) {
    throw ParseError("zero denominator in " + s);
  }
  Rational q(s);
  q.canonicalize();
  return q;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("matrix rows must have " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_string()) throw ParseError("matrix entries are rational strings");
      m(r, c) = rational_from_string(row[c].get<std::string>());
    }
  }
  return m;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
  Json j;
  Json objects = Json::array();
  for (int x = 0; x < g.num_objects(); ++x) objects.push_back(g.object_name(x));
  j["objects"] = std::move(objects);
  Json arrows = Json::array();
  for (int a = 0; a < g.num_arrows(); ++a) {
    arrows.push_back({{"id", g.arrow_name(a)},
                      {"src", g.object_name(g.source(a))},
                      {"tgt", g.object_name(g.target(a))}});
  }
  j["arrows"] = std::move(arrows);
  Json compose = Json::array();
  for (auto [a, b] : g.composable_pairs()) {
    const ArrowId ab = g.table(a, b);
    if (ab == kNone) continue;
    compose.push_back({g.arrow_name(a), g.arrow_name(b), g.arrow_name(ab)});
  }
  j["compose"] = std::move(compose);
  Json unit = Json::array();
  for (int x = 0; x < g.num_objects(); ++x) {
    unit.push_back({g.object_name(x), g.arrow_name(g.unit(x))});
  }
  j["unit"] = std::move(unit);
  Json inverse = Json::array();
  for (int a = 0; a < g.num_arrows(); ++a) {
    inverse.push_back({g.arrow_name(a), g.arrow_name(g.inverse(a))});
  }
  j["inverse"] = std::move(inverse);
  return j;
}

FiniteGroupoid groupoid_from_json(const Json& j) {
  const Json& objects = field(j, "objects");
  const Json& arrows = field(j, "arrows");
  if (!objects.is_array() || !arrows.is_array()) throw ParseError("objects and arrows are lists");
  FiniteGroupoid::Data d;
  std::map<std::string, int> oi, ai;
  for (const auto& o : objects) {
    if (!o.is_string()) throw ParseError("object ids are strings");
    if (!oi.emplace(o.get<std::string>(), static_cast<int>(oi.size())).second) {
      throw ParseError("duplicate object " + o.get<std::string>());
    }
    d.object_names.push_back(o.get<std::string>());
  }
  auto obj = [&](const Json& v) {
    if (!v.is_string() || !oi.count(v.get<std::string>())) throw ParseError("unknown object");
    return oi.at(v.get<std::string>());
  };
  for (const auto& a : arrows) {
    const std::string id = string_field(a, "id");
    if (!ai.emplace(id, static_cast<int>(ai.size())).second) throw ParseError("duplicate arrow " + id);
    d.arrow_names.push_back(id);
    d.source.push_back(obj(field(a, "src")));
    d.target.push_back(obj(field(a, "tgt")));
  }
  auto arr = [&](const Json& v) {
    if (!v.is_string() || !ai.count(v.get<std::string>())) throw ParseError("unknown arrow");
    return ai.at(v.get<std::string>());
  };
  const std::size_t m = d.arrow_names.size();
  d.table.assign(m * m, kNone);
  for (const auto& c : field(j, "compose")) {
    if (!c.is_array() || c.size() != 3) throw ParseError("compose entries are [g, h, gh]");
    d.table[arr(c[0]) * m + arr(c[1])] = arr(c[2]);
  }
  d.unit.assign(d.object_names.size(), kNone);
  for (const auto& u : field(j, "unit")) {
    if (!u.is_array() || u.size() != 2) throw ParseError("unit entries are [x, g]");
    d.unit[obj(u[0])] = arr(u[1]);
  }
  d.inverse.assign(m, kNone);
  for (const auto& i : field(j, "inverse")) {
    if (!i.is_array() || i.size() != 2) throw ParseError("inverse entries are [g, g']");
    d.inverse[arr(i[0])] = arr(i[1]);
  }
  for (auto u : d.unit) {
    if (u == kNone) throw ParseError("every object needs a unit");
  }
  for (auto i : d.inverse) {
    if (i == kNone) throw ParseError("every arrow needs an inverse");
  }
  return FiniteGroupoid(std::move(d));
}

// ---------------------------------------------------------------------------

Instance::Entry& Instance::insert(const std::string& name, Payload p) {
  if (name.empty()) throw ParseError("object names must be nonempty");
  if (contains(name)) throw ParseError("duplicate object name " + name);
  entries_.push_back(std::make_unique<Entry>(Entry{name, std::move(p)}));
  return *entries_.back();
}

bool Instance::contains(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e->name == name) return true;
  }
  return false;
}

const Instance::Entry& Instance::entry(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e->name == name) return *e;
  }
  throw ParseError("unresolved reference " + name);
}

std::string Instance::type_name(const std::string& name) const {
  static const char* names[] = {"groupoid", "functor", "cover",      "partition",
                                "ruth",     "ruth_morphism", "vbgroupoid", "vbmap"};
  return names[entry(name).payload.index()];
}

#define VBG_GETTER(method, T, label)                                   \
  const T& Instance::method(const std::string& name) const {          \
    const T* p = as<T>(entry(name));                                   \
    if (!p) throw ParseError(name + " is not a " label);               \
    return *p;                                                         \
  }
VBG_GETTER(functor, GroupoidMap, "functor")
VBG_GETTER(partition, PartitionEntry, "partition")
VBG_GETTER(ruth, TwoTermRuth, "ruth")
VBG_GETTER(ruth_morphism, RuthMorphism, "ruth morphism")
VBG_GETTER(vbgroupoid, VBGroupoid, "VB-groupoid")
VBG_GETTER(vbmap, VBMap, "VB-map")
#undef VBG_GETTER

const CechGroupoid& Instance::cover(const std::string& name) const {
  const CoverEntry* c = as<CoverEntry>(entry(name));
  if (!c) throw ParseError(name + " is not a cover");
  return *c->cech;
}

const FiniteGroupoid& Instance::groupoid(const std::string& name) const {
  const Entry& e = entry(name);
  if (const auto* g = as<FiniteGroupoid>(e)) return *g;
  if (const auto* c = as<CoverEntry>(e)) return c->cech->groupoid;
  throw ParseError(name + " is not a groupoid or cover");
}

const FiniteGroupoid& Instance::add(const std::string& name, FiniteGroupoid g) {
  return *as<FiniteGroupoid>(insert(name, std::make_unique<FiniteGroupoid>(std::move(g))));
}
const GroupoidMap& Instance::add(const std::string& name, GroupoidMap f) {
  return *as<GroupoidMap>(insert(name, std::make_unique<GroupoidMap>(std::move(f))));
}
const CechGroupoid& Instance::add_cover(const std::string& name, const std::string& base,
                                        std::vector<std::vector<ObjectId>> sets) {
  auto c = std::make_unique<CoverEntry>(CoverEntry{base, cech_groupoid(groupoid(base), std::move(sets))});
  return *as<CoverEntry>(insert(name, std::move(c)))->cech;
}
const PartitionOfUnity& Instance::add_partition(const std::string& name, const std::string& cover_name,
                                                PartitionOfUnity l) {
  cover(cover_name);
  auto p = std::make_unique<PartitionEntry>(PartitionEntry{cover_name, std::move(l)});
  return as<PartitionEntry>(insert(name, std::move(p)))->weights;
}
const TwoTermRuth& Instance::add(const std::string& name, TwoTermRuth r) {
  return *as<TwoTermRuth>(insert(name, std::make_unique<TwoTermRuth>(std::move(r))));
}
const RuthMorphism& Instance::add(const std::string& name, RuthMorphism m) {
  return *as<RuthMorphism>(insert(name, std::make_unique<RuthMorphism>(std::move(m))));
}
const VBGroupoid& Instance::add(const std::string& name, VBGroupoid v) {
  return *as<VBGroupoid>(insert(name, std::make_unique<VBGroupoid>(std::move(v))));
}
const VBMap& Instance::add(const std::string& name, VBMap f) {
  return *as<VBMap>(insert(name, std::make_unique<VBMap>(std::move(f))));
}

std::string Instance::groupoid_name(const FiniteGroupoid* g) const {
  for (const auto& e : entries_) {
    if (as<FiniteGroupoid>(*e) == g) return e->name;
    if (const auto* c = as<CoverEntry>(*e); c && &c->cech->groupoid == g) return e->name;
  }
  throw ParseError("groupoid is not part of the instance");
}

std::string Instance::pointer_name(const void* p) const {
  for (const auto& e : entries_) {
    const void* q = std::visit([](const auto& u) -> const void* { return u.get(); }, e->payload);
    if (q == p) return e->name;
  }
  throw ParseError("referenced object is not part of the instance");
}

std::string Instance::functor_name(const GroupoidMap& f) const {
  if (f.domain == f.codomain && same_map(f, identity_map(*f.domain))) return "identity";
  for (const auto& e : entries_) {
    const auto* g = as<GroupoidMap>(*e);
    if (g && g->domain == f.domain && g->codomain == f.codomain && same_map(*g, f)) return e->name;
  }
  throw ParseError("base functor is not part of the instance");
}

std::vector<std::string> Instance::dependencies(const Entry& e) const {
  if (const auto* f = as<GroupoidMap>(e)) return {groupoid_name(f->domain), groupoid_name(f->codomain)};
  if (const auto* c = as<CoverEntry>(e)) return {c->base};
  if (const auto* p = as<PartitionEntry>(e)) return {p->cover};
  if (const auto* r = as<TwoTermRuth>(e)) return {groupoid_name(r->base)};
  if (const auto* m = as<RuthMorphism>(e)) return {pointer_name(m->source), pointer_name(m->target)};
  if (const auto* v = as<VBGroupoid>(e)) return {groupoid_name(v->base)};
  if (const auto* f = as<VBMap>(e)) {
    std::vector<std::string> out{pointer_name(f->source), pointer_name(f->target)};
    const std::string b = functor_name(f->base_map);
    if (b != "identity") out.push_back(b);
    return out;
  }
  return {};
}

Json Instance::entry_json(const Entry& e) const {
  Json j;
  j["type"] = type_name(e.name);
  if (const auto* g = as<FiniteGroupoid>(e)) {
    const Json body = groupoid_to_json(*g);
    for (const auto& [k, v] : body.items()) j[k] = v;
  } else if (const auto* f = as<GroupoidMap>(e)) {
    j["domain"] = groupoid_name(f->domain);
    j["codomain"] = groupoid_name(f->codomain);
    Json om = Json::array(), am = Json::array();
    for (int x = 0; x < f->domain->num_objects(); ++x) {
      om.push_back({f->domain->object_name(x), f->codomain->object_name(f->obj(x))});
    }
    for (int a = 0; a < f->domain->num_arrows(); ++a) {
      am.push_back({f->domain->arrow_name(a), f->codomain->arrow_name(f->arr(a))});
    }
    j["object_map"] = std::move(om);
    j["arrow_map"] = std::move(am);
  } else if (const auto* c = as<CoverEntry>(e)) {
    j["base"] = c->base;
    const auto& G = *c->cech->projection.codomain;
    Json sets = Json::array();
    for (const auto& s : c->cech->cover) {
      Json set = Json::array();
      for (ObjectId x : s) set.push_back(G.object_name(x));
      sets.push_back(std::move(set));
    }
    j["sets"] = std::move(sets);
  } else if (const auto* p = as<PartitionEntry>(e)) {
    j["cover"] = p->cover;
    const auto& G = *cover(p->cover).projection.codomain;
    Json w = Json::object();
    for (int x = 0; x < G.num_objects(); ++x) {
      Json row = Json::array();
      for (const auto& q : p->weights.weight[x]) row.push_back(rational_to_string(q));
      w[G.object_name(x)] = std::move(row);
    }
    j["weights"] = std::move(w);
  } else if (const auto* r = as<TwoTermRuth>(e)) {
    const auto& G = *r->base;
    j["base"] = groupoid_name(r->base);
    j["E"] = object_counts_json(G, r->dimE);
    j["C"] = object_counts_json(G, r->dimC);
    j["anchor"] = object_matrices(G, r->anchor);
    j["rhoE"] = arrow_matrices(G, r->rhoE, true);
    j["rhoC"] = arrow_matrices(G, r->rhoC, true);
    Json gamma = Json::object();
    for (auto [a, b] : G.composable_pairs()) {
      if (G.is_unit(a) || G.is_unit(b)) continue;
      gamma[pair_name(G, a, b)] = matrix_to_json(r->gamma(a, b));
    }
    j["gamma"] = std::move(gamma);
  } else if (const auto* m = as<RuthMorphism>(e)) {
    const auto& G = *m->source->base;
    j["source"] = pointer_name(m->source);
    j["target"] = pointer_name(m->target);
    j["PhiE"] = object_matrices(G, m->PhiE);
    j["PhiC"] = object_matrices(G, m->PhiC);
    j["mu"] = arrow_matrices(G, m->mu, true);
  } else if (const auto* v = as<VBGroupoid>(e)) {
    const auto& G = *v->base;
    j["base"] = groupoid_name(v->base);
    j["E"] = object_counts_json(G, v->dimE);
    Json gd = Json::object();
    for (int a = 0; a < G.num_arrows(); ++a) gd[G.arrow_name(a)] = v->dimGamma[a];
    j["Gamma"] = std::move(gd);
    j["s"] = arrow_matrices(G, v->s, false);
    j["t"] = arrow_matrices(G, v->t, false);
    j["u"] = object_matrices(G, v->u);
    Json mm = Json::object();
    for (auto [a, b] : G.composable_pairs()) mm[pair_name(G, a, b)] = matrix_to_json(v->m(a, b));
    j["m"] = std::move(mm);
  } else if (const auto* f = as<VBMap>(e)) {
    j["source"] = pointer_name(f->source);
    j["target"] = pointer_name(f->target);
    j["base_map"] = functor_name(f->base_map);
    j["obj"] = object_matrices(*f->source->base, f->obj);
    j["arr"] = arrow_matrices(*f->source->base, f->arr, false);
  }
  return j;
}

Json Instance::to_json(const std::vector<std::string>& names) const {
  std::set<std::string> keep;
  std::vector<std::string> stack(names.begin(), names.end());
  while (!stack.empty()) {
    const std::string n = stack.back();
    stack.pop_back();
    if (!keep.insert(n).second) continue;
    for (auto& d : dependencies(entry(n))) stack.push_back(d);
  }
  Json objects = Json::object();
  for (const auto& e : entries_) {
    if (keep.count(e->name)) objects[e->name] = entry_json(*e);
  }
  Json out;
  out["version"] = kFormatVersion;
  out["objects"] = std::move(objects);
  return out;
}

Instance Instance::from_json(const Json& j) {
  const Json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw ParseError("unsupported format version");
  }
  Instance inst;
  for (const auto& [name, o] : object_field(j, "objects").items()) {
    const std::string type = string_field(o, "type");
    if (type == "groupoid") {
      inst.add(name, groupoid_from_json(o));
    } else if (type == "functor") {
      GroupoidMap f{&inst.groupoid(string_field(o, "domain")),
                    &inst.groupoid(string_field(o, "codomain")), {}, {}};
      f.object_map.assign(f.domain->num_objects(), kNone);
      f.arrow_map.assign(f.domain->num_arrows(), kNone);
      for (const auto& p : field(o, "object_map")) {
        if (!p.is_array() || p.size() != 2) throw ParseError("object_map entries are [x, y]");
        f.object_map[object_ref(*f.domain, p[0])] = object_ref(*f.codomain, p[1]);
      }
      for (const auto& p : field(o, "arrow_map")) {
        if (!p.is_array() || p.size() != 2) throw ParseError("arrow_map entries are [g, h]");
        f.arrow_map[arrow_ref(*f.domain, p[0])] = arrow_ref(*f.codomain, p[1]);
      }
      for (auto v : f.object_map) {
        if (v == kNone) throw ParseError("functor " + name + " misses an object");
      }
      for (auto v : f.arrow_map) {
        if (v == kNone) throw ParseError("functor " + name + " misses an arrow");
      }
      inst.add(name, std::move(f));
    } else if (type == "cover") {
      const std::string base = string_field(o, "base");
      const FiniteGroupoid& G = inst.groupoid(base);
      std::vector<std::vector<ObjectId>> sets;
      for (const auto& s : field(o, "sets")) {
        if (!s.is_array()) throw ParseError("cover sets are lists of objects");
        std::vector<ObjectId> set;
        for (const auto& x : s) set.push_back(object_ref(G, x));
        sets.push_back(std::move(set));
      }
      inst.add_cover(name, base, std::move(sets));
    } else if (type == "partition") {
      const std::string cover_name = string_field(o, "cover");
      const CechGroupoid& cech = inst.cover(cover_name);
      const auto& G = *cech.projection.codomain;
      PartitionOfUnity l;
      l.weight.assign(G.num_objects(), {});
      std::vector<bool> seen(G.num_objects(), false);
      for (const auto& [x, row] : object_field(o, "weights").items()) {
        const ObjectId id = object_ref(G, Json(x));
        if (!row.is_array() || row.size() != cech.cover.size()) {
          throw ParseError("partition rows need one weight per cover set");
        }
        for (const auto& q : row) {
          if (!q.is_string()) throw ParseError("weights are rational strings");
          l.weight[id].push_back(rational_from_string(q.get<std::string>()));
        }
        seen[id] = true;
      }
      for (int x = 0; x < G.num_objects(); ++x) {
        if (!seen[x]) throw ParseError("partition lacks object " + G.object_name(x));
      }
      inst.add_partition(name, cover_name, std::move(l));
    } else if (type == "ruth") {
      const FiniteGroupoid& G = inst.groupoid(string_field(o, "base"));
      TwoTermRuth r = TwoTermRuth::zeros(G, object_counts(G, o, "E"), object_counts(G, o, "C"));
      r.anchor = matrices(o, "anchor", G.num_objects(), object_index(G), object_namer(G),
                          [&](int x) { return std::pair{r.dimE[x], r.dimC[x]}; }, required());
      auto unit_or_required = [&](const std::vector<std::size_t>& d) {
        return [&G, &d](int a) {
          return G.is_unit(a) ? std::optional<Matrix>(Matrix::identity(d[G.source(a)]))
                              : std::optional<Matrix>();
        };
      };
      r.rhoE = matrices(o, "rhoE", G.num_arrows(), arrow_index(G), arrow_namer(G),
                        [&](int a) { return std::pair{r.dimE[G.target(a)], r.dimE[G.source(a)]}; },
                        unit_or_required(r.dimE));
      r.rhoC = matrices(o, "rhoC", G.num_arrows(), arrow_index(G), arrow_namer(G),
                        [&](int a) { return std::pair{r.dimC[G.target(a)], r.dimC[G.source(a)]}; },
                        unit_or_required(r.dimC));
      std::vector<bool> seen(r.gamma_table.size(), false);
      for (const auto& [k, v] : object_field(o, "gamma").items()) {
        const auto [a, b] = pair_key(G, k);
        if (!G.composable(a, b)) throw ParseError("gamma key " + k + " is not composable");
        r.gamma(a, b) = matrix_from_json(v, r.dimC[G.target(a)], r.dimE[G.source(b)]);
        seen[a * G.num_arrows() + b] = true;
      }
      for (auto [a, b] : G.composable_pairs()) {
        if (!G.is_unit(a) && !G.is_unit(b) && !seen[a * G.num_arrows() + b]) {
          throw ParseError("gamma lacks entry " + pair_name(G, a, b));
        }
      }
      inst.add(name, std::move(r));
    } else if (type == "ruth_morphism") {
      const TwoTermRuth& s = inst.ruth(string_field(o, "source"));
      const TwoTermRuth& t = inst.ruth(string_field(o, "target"));
      if (s.base != t.base) throw ParseError("ruth morphism ends over different bases");
      const auto& G = *s.base;
      RuthMorphism m{&s, &t, {}, {}, {}};
      m.PhiE = matrices(o, "PhiE", G.num_objects(), object_index(G), object_namer(G),
                        [&](int x) { return std::pair{t.dimE[x], s.dimE[x]}; }, required());
      m.PhiC = matrices(o, "PhiC", G.num_objects(), object_index(G), object_namer(G),
                        [&](int x) { return std::pair{t.dimC[x], s.dimC[x]}; }, required());
      m.mu = matrices(o, "mu", G.num_arrows(), arrow_index(G), arrow_namer(G),
                      [&](int a) { return std::pair{t.dimC[G.target(a)], s.dimE[G.source(a)]}; },
                      [&](int a) {
                        return G.is_unit(a) ? std::optional<Matrix>(Matrix::zero(
                                                  t.dimC[G.target(a)], s.dimE[G.source(a)]))
                                            : std::optional<Matrix>();
                      });
      inst.add(name, std::move(m));
    } else if (type == "vbgroupoid") {
      const FiniteGroupoid& G = inst.groupoid(string_field(o, "base"));
      VBGroupoid v = zero_vb(G);
      v.dimE = object_counts(G, o, "E");
      v.dimGamma = arrow_counts(G, o, "Gamma");
      v.s = matrices(o, "s", G.num_arrows(), arrow_index(G), arrow_namer(G),
                     [&](int a) { return std::pair{v.dimE[G.source(a)], v.dimGamma[a]}; }, required());
      v.t = matrices(o, "t", G.num_arrows(), arrow_index(G), arrow_namer(G),
                     [&](int a) { return std::pair{v.dimE[G.target(a)], v.dimGamma[a]}; }, required());
      v.u = matrices(o, "u", G.num_objects(), object_index(G), object_namer(G),
                     [&](int x) { return std::pair{v.dimGamma[G.unit(x)], v.dimE[x]}; }, required());
      std::vector<bool> seen(v.m_table.size(), false);
      for (const auto& [k, mj] : object_field(o, "m").items()) {
        const auto [a, b] = pair_key(G, k);
        if (!G.composable(a, b)) throw ParseError("m key " + k + " is not composable");
        const ArrowId ab = G.table(a, b);
        if (ab == kNone) throw ParseError("m key " + k + " has no composite");
        v.m(a, b) = matrix_from_json(mj, v.dimGamma[ab], v.dimGamma[a] + v.dimGamma[b]);
        seen[a * G.num_arrows() + b] = true;
      }
      for (auto [a, b] : G.composable_pairs()) {
        if (G.table(a, b) != kNone && !seen[a * G.num_arrows() + b]) {
          throw ParseError("m lacks entry " + pair_name(G, a, b));
        }
      }
      inst.add(name, std::move(v));
    } else if (type == "vbmap") {
      const VBGroupoid& s = inst.vbgroupoid(string_field(o, "source"));
      const VBGroupoid& t = inst.vbgroupoid(string_field(o, "target"));
      const std::string b = string_field(o, "base_map");
      GroupoidMap f;
      if (b == "identity") {
        if (s.base != t.base) throw ParseError("identity base map between different bases");
        f = identity_map(*s.base);
      } else {
        f = inst.functor(b);
        if (f.domain != s.base || f.codomain != t.base) {
          throw ParseError("base map " + b + " does not match the VB-map ends");
        }
      }
      const auto& G = *s.base;
      VBMap m{&s, &t, f, {}, {}};
      m.obj = matrices(o, "obj", G.num_objects(), object_index(G), object_namer(G),
                       [&](int x) { return std::pair{t.dimE[f.obj(x)], s.dimE[x]}; }, required());
      m.arr = matrices(o, "arr", G.num_arrows(), arrow_index(G), arrow_namer(G),
                       [&](int a) { return std::pair{t.dimGamma[f.arr(a)], s.dimGamma[a]}; },
                       required());
      inst.add(name, std::move(m));
    } else {
      throw ParseError("unknown object type " + type);
    }
  }
  return inst;
}

Instance Instance::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace vbg
