#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "vbg/cohomology.hpp"
#include "vbg/generate.hpp"
#include "vbg/serialize.hpp"

namespace vbg {

namespace {

struct Options {
  int pmax = 3;
  std::uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
  std::string file;
  std::vector<std::string> names;
  std::string object;
  std::string output_name;
  std::string partition;
  std::string from, to;
  std::string recipe;
};

/// A failed mathematical check, reported with exit status 1.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Session {
 public:
  Session(std::string command, const Options& o, std::ostream& out)
      : command_(std::move(command)), opt_(o), out_(out) {}

  void emit(Json line) {
    Json full;
    full["command"] = command_;
    for (auto& [k, v] : line.items()) full[k] = v;
    out_ << full.dump() << '\n';
  }

  /// Serializes the closure of `names` under the output stem.
  void write(const Instance& inst, const std::vector<std::string>& names, const std::string& stem) {
    const Json j = inst.to_json(names);
    if (opt_.out_dir.empty()) {
      emit({{"output", stem}, {"instance", j}});
      return;
    }
    std::filesystem::create_directories(opt_.out_dir);
    const auto path = std::filesystem::path(opt_.out_dir) / (stem + ".json");
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path.string());
    f << j.dump(2) << '\n';
    emit({{"output", stem}, {"path", path.string()}});
  }

  const Options& opt() const { return opt_; }

 private:
  std::string command_;
  const Options& opt_;
  std::ostream& out_;
};

std::size_t total_rank(const VBGroupoid& v) {
  std::size_t n = 0;
  for (auto d : v.dimE) n += d;
  return n;
}

Json report_json(const Report& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) out.push_back({{"axiom", v.axiom}, {"witnesses", v.witnesses}});
  return out;
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

Report check_entry(const Instance& inst, const std::string& name) {
  const std::string type = inst.type_name(name);
  if (type == "groupoid") return validate_groupoid(inst.groupoid(name));
  if (type == "functor") return validate_functor(inst.functor(name));
  if (type == "cover") {
    Report r;
    const MoritaCertificate c = is_morita(inst.cover(name).projection);
    if (!c.is_morita) r.add("projection not Morita", c.witnesses);
    return r;
  }
  if (type == "partition") {
    const auto& p = inst.partition(name);
    return check_partition(inst.cover(p.cover), p.weights);
  }
  if (type == "ruth") return check_ruth(inst.ruth(name));
  if (type == "ruth_morphism") return check_ruth_morphism(inst.ruth_morphism(name));
  if (type == "vbgroupoid") return check_vbgroupoid(inst.vbgroupoid(name));
  return check_vbmap(inst.vbmap(name));
}

Report guarded_check(const Instance& inst, const std::string& name) {
  try {
    return check_entry(inst, name);
  } catch (const std::invalid_argument& e) {
    Report r;
    r.add("precondition", {e.what()});
    return r;
  }
}

/// Every object the named ones depend on must pass its validator.
void require_valid_closure(Session& s, const Instance& inst, const std::vector<std::string>& names) {
  const Json closure = inst.to_json(names);
  for (const auto& [name, body] : closure["objects"].items()) {
    const Report r = guarded_check(inst, name);
    if (r.ok()) continue;
    s.emit({{"object", name}, {"verdict", "fail"}, {"violations", report_json(r)}});
    throw CheckFailed(name + " is not valid");
  }
}

std::string stem_of(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::string output_name(const Options& o, const std::string& fallback) {
  return o.output_name.empty() ? fallback : o.output_name;
}

const CechGroupoid* cover_over(const Instance& inst, const FiniteGroupoid* g, std::string* name) {
  for (const auto& e : inst.entries()) {
    if (inst.type_name(e->name) != "cover") continue;
    const CechGroupoid& c = inst.cover(e->name);
    if (&c.groupoid == g) {
      *name = e->name;
      return &c;
    }
  }
  return nullptr;
}

Json certificate_json(const QuasiIsoCertificate& c) {
  Json d = Json::array();
  for (const auto& e : c.degrees) {
    d.push_back({{"degree", e.degree},
                 {"dim_source", e.dim_source},
                 {"dim_target", e.dim_target},
                 {"induced_rank", e.induced_rank}});
  }
  return {{"quasi_iso", c.is_quasi_iso}, {"degrees", d}};
}

int cmd_check(Session& s, const Instance& inst) {
  std::vector<std::string> names = s.opt().names;
  if (names.empty()) {
    for (const auto& e : inst.entries()) names.push_back(e->name);
  }
  bool all = true;
  for (const auto& n : names) {
    const std::string type = inst.type_name(n);
    const Report r = guarded_check(inst, n);
    all = all && r.ok();
    s.emit({{"object", n}, {"type", type}, {"verdict", verdict(r.ok())}, {"violations", report_json(r)}});
  }
  s.emit({{"checked", names.size()}, {"verdict", verdict(all)}});
  return all ? kExitPass : kExitCheckFailed;
}

int cmd_groth(Session& s, Instance& inst) {
  const std::string& n = s.opt().object;
  const TwoTermRuth& r = inst.ruth(n);
  const std::string out = output_name(s.opt(), n + ".groth");
  inst.add(out, grothendieck(r));
  s.emit({{"object", n}, {"verdict", "pass"}, {"vbgroupoid", out}});
  s.write(inst, {out}, stem_of(out));
  return kExitPass;
}

int cmd_split(Session& s, Instance& inst) {
  const std::string& n = s.opt().object;
  const VBGroupoid& v = inst.vbgroupoid(n);
  const SplitResult sp = split(v, choose_cleavage(v));
  const bool ok = check_ruth(*sp.ruth).ok() && check_vbmap(sp.iso).ok() && vbmap_invertible(sp.iso);
  const std::string out = output_name(s.opt(), n + ".split");
  inst.add(out, std::move(*sp.ruth));
  s.emit({{"object", n}, {"verdict", verdict(ok)}, {"ruth", out}});
  s.write(inst, {out}, stem_of(out));
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_morita(Session& s, const Instance& inst) {
  const std::string& n = s.opt().object;
  if (inst.type_name(n) == "ruth_morphism") {
    const RuthMorphism& m = inst.ruth_morphism(n);
    const auto cert = is_quasi_iso(m);
    Json fibers = Json::array();
    for (std::size_t x = 0; x < cert.per_object.size(); ++x) {
      Json f = certificate_json(cert.per_object[x]);
      f["object"] = m.source->base->object_name(static_cast<int>(x));
      fibers.push_back(std::move(f));
    }
    s.emit({{"object", n}, {"quasi_iso", cert.is_quasi_iso}, {"fibers", fibers},
            {"verdict", verdict(cert.is_quasi_iso)}});
    return cert.is_quasi_iso ? kExitPass : kExitCheckFailed;
  }
  const VBMap& f = inst.vbmap(n);
  const VBMoritaCertificate cert = is_vb_morita(f);
  Json fibers = Json::array();
  for (std::size_t x = 0; x < cert.fibers.size(); ++x) {
    Json c = certificate_json(cert.fibers[x]);
    c["object"] = f.source->base->object_name(static_cast<int>(x));
    fibers.push_back(std::move(c));
  }
  const Json base = {{"morita", cert.base.is_morita},
                     {"orbit_bijection", cert.base.orbit_bijection},
                     {"isotropy_isomorphisms", cert.base.isotropy_isomorphisms},
                     {"fully_faithful", cert.base.fully_faithful},
                     {"essentially_surjective", cert.base.essentially_surjective}};
  s.emit({{"object", n}, {"vb_morita", cert.is_vb_morita}, {"base", base}, {"fibers", fibers},
          {"verdict", verdict(cert.is_vb_morita)}});
  return cert.is_vb_morita ? kExitPass : kExitCheckFailed;
}

int cmd_dual(Session& s, Instance& inst) {
  const std::string& n = s.opt().object;
  const std::string out = output_name(s.opt(), n + ".dual");
  const std::string type = inst.type_name(n);
  if (type == "ruth") {
    const TwoTermRuth& r = inst.ruth(n);
    const TwoTermRuth& d = inst.add(out, dual_ruth(r));
    const bool ok = check_ruth(d).ok();
    s.emit({{"object", n}, {"verdict", verdict(ok)}, {"ruth", out}});
    s.write(inst, {out}, stem_of(out));
    return ok ? kExitPass : kExitCheckFailed;
  }
  const VBGroupoid& v = inst.vbgroupoid(n);
  const VBGroupoid& d = inst.add(out, dual_vb(v));
  const bool ok = check_vbgroupoid(d).ok();
  s.emit({{"object", n}, {"verdict", verdict(ok)}, {"vbgroupoid", out}});
  s.write(inst, {out}, stem_of(out));
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_cohomology(Session& s, const Instance& inst) {
  const std::string& n = s.opt().object;
  const int pmax = s.opt().pmax;
  if (pmax < 1) throw ParseError("--pmax must be at least 1");
  if (inst.type_name(n) == "ruth") {
    const TwoTermRuth& r = inst.ruth(n);
    const RuthVsDual t = ruth_vs_dual_vb(r, pmax);
    Json degrees = Json::array();
    for (std::size_t k = 0; k < t.degrees.size(); ++k) {
      degrees.push_back({{"n", t.degrees[k]},
                         {"dim_H_ruth", t.ruth_dims[k]},
                         {"dim_H_vb_dual", t.vb_dims[k]}});
    }
    s.emit({{"object", n}, {"pmax", pmax}, {"degrees", degrees},
            {"verdicts", {{"shift", t.report.ok()}}}, {"violations", report_json(t.report)},
            {"verdict", verdict(t.report.ok())}});
    return t.report.ok() ? kExitPass : kExitCheckFailed;
  }
  const VBGroupoid& v = inst.vbgroupoid(n);
  const LinVsVB t = hvb_equals_hlin(v, pmax);
  Json degrees = Json::array();
  for (const auto& row : t.degrees) {
    degrees.push_back({{"p", row.p},
                       {"dim_lin", row.dim_lin},
                       {"dim_vb", row.dim_vb},
                       {"dim_H_lin", row.dim_h_lin},
                       {"dim_H_vb", row.dim_h_vb}});
  }
  const bool ok = t.inclusion_iso && t.report.ok();
  s.emit({{"object", n}, {"pmax", pmax}, {"degrees", degrees},
          {"verdicts", {{"inclusion_iso", t.inclusion_iso}, {"checks", t.report.ok()}}},
          {"violations", report_json(t.report)}, {"verdict", verdict(ok)}});
  return ok ? kExitPass : kExitCheckFailed;
}

PartitionOfUnity chosen_partition(Session& s, const Instance& inst, const std::string& cover_name,
                                  const CechGroupoid& cech, bool uniform_default) {
  if (s.opt().partition.empty()) {
    return uniform_default ? uniform_partition(cech) : point_partition(cech);
  }
  const auto& p = inst.partition(s.opt().partition);
  if (p.cover != cover_name) throw ParseError("partition belongs to a different cover");
  return p.weights;
}

int descend_vbmap(Session& s, Instance& inst) {
  const std::string& n = s.opt().object;
  const VBMap& psi = inst.vbmap(n);
  if (s.opt().from.empty() || s.opt().to.empty()) {
    throw ParseError("descending a VB-map needs --from and --to");
  }
  const VBGroupoid& a = inst.vbgroupoid(s.opt().from);
  const VBGroupoid& b = inst.vbgroupoid(s.opt().to);
  std::string cover_name;
  const CechGroupoid* cech = cover_over(inst, psi.source->base, &cover_name);
  if (!cech) throw ParseError(n + " is not over the Čech groupoid of a cover");
  const auto l = chosen_partition(s, inst, cover_name, *cech, true);
  const DescendedMap d = descend_map(*cech, psi, a, b, l);
  const bool ok = check_vbmap(d.phi).ok() && check_vbmap_iso(d.iso, psi, d.pulled).ok();
  const std::string out = output_name(s.opt(), n + ".descended");
  inst.add(out, d.phi);
  // descend_map throws unless the cocycle and descent checks hold.
  std::size_t nontrivial = 0;
  for (const auto& beta : d.beta) nontrivial += !beta.is_zero();
  s.emit({{"stage", "cocycle"}, {"verdict", "pass"}, {"nontrivial_beta", nontrivial}});
  s.emit({{"stage", "descend_map"}, {"verdict", verdict(ok)}, {"vbmap", out}});
  s.write(inst, {out}, stem_of(out));
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_descend(Session& s, Instance& inst) {
  const std::string& n = s.opt().object;
  if (inst.type_name(n) == "vbmap") return descend_vbmap(s, inst);
  const VBGroupoid& v = inst.vbgroupoid(n);
  std::string cover_name;
  const CechGroupoid* cech = cover_over(inst, v.base, &cover_name);
  if (!cech) throw ParseError(n + " is not over the Čech groupoid of a cover");
  const auto l = chosen_partition(s, inst, cover_name, *cech, false);

  InvertiblePadding pad = make_invertible(v, *cech);
  Json ranks = Json::object();
  for (int a = 0; a < cech->groupoid.num_objects(); ++a) {
    ranks[cech->groupoid.object_name(a)] = pad.omega->dimE[a];
  }
  const bool inv = check_kernel_invertible(*pad.padded, *cech, pad.cleavage).ok();
  s.emit({{"stage", "make_invertible"}, {"verdict", verdict(inv)}, {"omega_ranks", ranks}});
  if (!inv) return kExitCheckFailed;
  const Cleavage sym = symmetrize_cleavage(*pad.padded, *cech, pad.cleavage);
  s.emit({{"stage", "symmetrize"}, {"verdict", verdict(check_cleavage(*pad.padded, sym).ok())}});
  Cleavage flat;
  try {
    flat = flatten_cleavage(*pad.padded, *cech, sym, l);
  } catch (const DescentError& e) {
    s.emit({{"stage", "flatten"}, {"verdict", "fail"}, {"message", e.what()}});
    return kExitCheckFailed;
  }
  s.emit({{"stage", "flatten"}, {"verdict", verdict(check_u_flat(*pad.padded, *cech, flat).ok())}});
  DescendedObject d = descend_object(*pad.padded, *cech, flat);
  const bool morita = is_vb_morita(pad.projection).is_vb_morita;
  const bool ok = check_vbmap(d.comparison).ok() && vbmap_invertible(d.comparison) && morita &&
                  check_vbgroupoid(*d.descended).ok();
  s.emit({{"stage", "descend_object"}, {"verdict", verdict(ok)},
          {"comparison_invertible", vbmap_invertible(d.comparison)}, {"projection_vb_morita", morita}});

  const std::string out = output_name(s.opt(), n + ".descended");
  inst.add(out + ".omega", std::move(*pad.omega));
  const VBGroupoid& padded = inst.add(out + ".padded", std::move(*pad.padded));
  const VBGroupoid& descended = inst.add(out, std::move(*d.descended));
  VBGroupoid pulled_vb = std::move(*base_change(cech->projection, descended).vb);
  const VBGroupoid& pulled = inst.add(out + ".pulled", std::move(pulled_vb));
  VBMap comparison = d.comparison;
  comparison.source = &pulled;
  comparison.target = &padded;
  inst.add(out + ".comparison", std::move(comparison));
  s.write(inst, {out + ".omega", out, out + ".comparison"}, stem_of(out));
  return ok ? kExitPass : kExitCheckFailed;
}

struct CoverRecipe {
  FiniteGroupoid base;
  std::vector<std::vector<ObjectId>> sets;
};

CoverRecipe pick_cover(Rng& rng) {
  using namespace fixtures;
  std::vector<CoverRecipe> all = {
      {point(), {{0}, {0}}},
      {cyclic(2), {{0}, {0}}},
      {pair(2), {{0}, {0, 1}}},
      {pair(2), {{0, 1}, {1}, {0}}},
      {s3_on_three_points(), {{0, 1}, {1, 2}, {0, 2}}},
  };
  return std::move(all[rng() % all.size()]);
}

FiniteGroupoid pick_base(Rng& rng) {
  using namespace fixtures;
  std::vector<FiniteGroupoid> all = {cyclic(2), cyclic(3), pair(2), s3_on_three_points(),
                                     disjoint_union(point(), cyclic(2))};
  return std::move(all[rng() % all.size()]);
}

/// Adds base "G", cover "U", partition "lambda" and returns the Čech data.
const CechGroupoid& add_cover(Instance& inst, Rng& rng) {
  CoverRecipe c = pick_cover(rng);
  inst.add("G", std::move(c.base));
  const CechGroupoid& cech = inst.add_cover("U", "G", c.sets);
  inst.add_partition("lambda", "U", uniform_partition(cech));
  return cech;
}

int cmd_gen(Session& s) {
  using namespace fixtures;
  const std::string& recipe = s.opt().recipe;
  Rng rng(s.opt().seed);
  Instance inst;
  std::vector<std::string> emit;
  if (recipe == "sign" || recipe == "trivial") {
    const FiniteGroupoid& z2 = inst.add("Z2", fixtures::cyclic(2));
    inst.add(recipe, recipe == "sign" ? sign_rep(z2) : trivial_rep(z2));
    emit = {recipe};
  } else if (recipe == "gauge(sign)") {
    const FiniteGroupoid& z2 = inst.add("Z2", fixtures::cyclic(2));
    const TwoTermRuth& sign = inst.add("sign", sign_rep(z2));
    GaugeResult g = random_gauge(rng, sign);
    const TwoTermRuth& gauged = inst.add("gauge", std::move(*g.ruth));
    RuthMorphism m = g.morphism;
    m.target = &gauged;
    inst.add("sign_to_gauge", std::move(m));
    emit = {"gauge", "sign_to_gauge"};
  } else if (recipe == "acyclic") {
    const FiniteGroupoid& g = inst.add("G", fixtures::pair(2));
    inst.add("acyclic", acyclic_ruth(g));
    emit = {"acyclic"};
  } else if (recipe == "honest") {
    const FiniteGroupoid& g = inst.add("G", pick_base(rng));
    const std::size_t orbits = orbits_and_isotropy(g).orbits.size();
    std::vector<int> trivial(orbits), regular(orbits);
    for (auto& k : trivial) k = static_cast<int>(rng() % 2);
    for (auto& k : regular) k = static_cast<int>(rng() % 2);
    inst.add("honest", honest_rep(g, trivial, regular));
    emit = {"honest"};
  } else if (recipe == "random-ruth") {
    const FiniteGroupoid& g = inst.add("G", pick_base(rng));
    inst.add("ruth", random_ruth(rng, g));
    emit = {"ruth"};
  } else if (recipe == "direct-sum") {
    const FiniteGroupoid& z2 = inst.add("Z2", fixtures::cyclic(2));
    inst.add("sum", direct_sum(sign_rep(z2), acyclic_ruth(z2)));
    emit = {"sum"};
  } else if (recipe == "cech-pullback") {
    const CechGroupoid& cech = add_cover(inst, rng);
    const VBGroupoid& gamma = inst.add("Gamma", grothendieck(random_ruth(rng, inst.groupoid("G"))));
    BaseChange bc = base_change(cech.projection, gamma);
    const VBGroupoid& pulled = inst.add("piGamma", std::move(*bc.vb));
    inst.add("pi", cech.projection);
    VBMap canonical = bc.map;
    canonical.source = &pulled;
    inst.add("canonical", std::move(canonical));
    descend(pulled, cech, point_partition(cech));
    emit = {"lambda", "canonical"};
  } else if (recipe == "twisted-map") {
    const CechGroupoid& cech = add_cover(inst, rng);
    const TwoTermRuth r = random_ruth(rng, inst.groupoid("G"));
    GaugeResult gauge = random_gauge(rng, r);
    const VBGroupoid& a = inst.add("A", grothendieck(r));
    const VBGroupoid& b = inst.add("B", grothendieck(*gauge.ruth));
    const VBMap phi = grothendieck_map(gauge.morphism, a, b);
    const VBGroupoid& pa = inst.add("piA", std::move(*base_change(cech.projection, a).vb));
    const VBGroupoid& pb = inst.add("piB", std::move(*base_change(cech.projection, b).vb));
    const CoreData kb = core(pb);
    std::vector<Matrix> alpha;
    for (int x = 0; x < cech.groupoid.num_objects(); ++x) {
      alpha.push_back(random_matrix(rng, kb.dim(x), pa.dimE[x]));
    }
    const VBMap& psi = inst.add("psi", twist(pullback_map(cech, phi, pa, pb), alpha));
    descend_map(cech, psi, a, b, uniform_partition(cech));
    emit = {"lambda", "A", "B", "psi"};
  } else if (recipe == "perturbed-pullback" || recipe == "rank-drop") {
    const CechGroupoid& cech = add_cover(inst, rng);
    const TwoTermRuth r = pullback_ruth(cech.projection, random_ruth(rng, inst.groupoid("G")));
    GaugeResult g = random_gauge(rng, r);
    VBGroupoid v = grothendieck(*g.ruth);
    if (recipe == "rank-drop") {
      std::vector<std::size_t> dims(cech.groupoid.num_objects(), 0);
      for (int a = 0; a < cech.groupoid.num_objects(); ++a) {
        if (cech.objects[a].second != cech.min_index(cech.objects[a].first)) dims[a] = 1;
      }
      v = direct_sum_vb(v, acyclic_vb(cech.groupoid, dims));
      if (total_rank(*make_invertible(v, cech).omega) == 0) {
        throw std::logic_error("rank-drop fixture needs padding");
      }
    }
    const VBGroupoid& added = inst.add("V", std::move(v));
    descend(added, cech, point_partition(cech));
    emit = {"lambda", "V"};
  } else {
    throw ParseError("unknown recipe " + recipe);
  }
  bool ok = true;
  for (const auto& e : inst.entries()) ok = ok && guarded_check(inst, e->name).ok();
  s.emit({{"recipe", recipe}, {"seed", s.opt().seed}, {"verdict", verdict(ok)}});
  if (!ok) return kExitCheckFailed;
  s.write(inst, emit, stem_of(output_name(s.opt(), recipe)));
  return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact checks and constructions for VB-groupoids over finite groupoids", "vbg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--pmax", o.pmax, "Top cochain degree")->envname("VBG_PMAX");
  app.add_option("--seed", o.seed, "Generator seed")->envname("VBG_SEED");
  app.add_option("--out", o.out_dir, "Output directory (stdout when absent)")->envname("VBG_OUT");
  app.add_option("--jobs", o.jobs, "Accepted for interface compatibility; runs sequentially")
      ->envname("VBG_JOBS");

  auto* check = app.add_subcommand("check", "Validate objects of an instance file");
  check->add_option("file", o.file)->required();
  check->add_option("names", o.names);
  auto object_command = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file)->required();
    c->add_option("object", o.object)->required();
    c->add_option("--name", o.output_name, "Name of the produced object");
    return c;
  };
  object_command("groth", "Grothendieck construction of a ruth");
  object_command("split", "Split a VB-groupoid by its canonical cleavage");
  object_command("morita", "VB-Morita certificate of a VB-map or ruth morphism");
  object_command("dual", "Dual of a VB-groupoid or ruth");
  object_command("cohomology", "Cohomology tables");
  auto* desc = object_command("descend", "Descend a VB-groupoid or VB-map along a cover");
  desc->add_option("--partition", o.partition, "Partition of unity");
  desc->add_option("--from", o.from, "Source VB-groupoid over the base (maps only)");
  desc->add_option("--to", o.to, "Target VB-groupoid over the base (maps only)");
  auto* gen = app.add_subcommand("gen", "Generate a fixture instance");
  gen->add_option("recipe", o.recipe)->required();
  gen->add_option("--name", o.output_name, "Output stem");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Session s(command, o, out);
  try {
    if (command == "gen") return cmd_gen(s);
    Instance inst = Instance::load(o.file);
    if (command == "check") return cmd_check(s, inst);
    std::vector<std::string> used{o.object};
    for (const std::string* extra : {&o.from, &o.to, &o.partition}) {
      if (!extra->empty()) used.push_back(*extra);
    }
    require_valid_closure(s, inst, used);
    if (command == "groth") return cmd_groth(s, inst);
    if (command == "split") return cmd_split(s, inst);
    if (command == "morita") return cmd_morita(s, inst);
    if (command == "dual") return cmd_dual(s, inst);
    if (command == "cohomology") return cmd_cohomology(s, inst);
    return cmd_descend(s, inst);
  } catch (const CheckFailed&) {
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    s.emit({{"verdict", "error"}, {"message", e.what()}});
    return kExitInputError;
  } catch (const std::runtime_error& e) {
    s.emit({{"verdict", "fail"}, {"message", e.what()}});
    return kExitCheckFailed;
  }
}

}  // namespace vbg
