#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbg {

using ObjectId = int;
using ArrowId = int;
inline constexpr int kNone = -1;

/// One failed axiom instance.
struct Violation {
  std::string axiom;
  std::vector<std::string> witnesses;
};

/// List of violations; empty means the checked structure is valid.
struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::vector<std::string> witnesses = {}) {
    violations.push_back({std::move(axiom), std::move(witnesses)});
  }
  void merge(const Report& other, const std::string& prefix = {});
  std::string summary() const;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite groupoid with integer-indexed objects and arrows.
///
/// `compose(g, h)` is g∘h ("g after h"), defined iff source(g) == target(h).
/// The composition table is stored densely together with the list of
/// composable pairs.
class FiniteGroupoid {
 public:
  struct Data {
    std::vector<std::string> object_names;
    std::vector<std::string> arrow_names;
    std::vector<ObjectId> source, target;
    std::vector<ArrowId> unit;     // per object
    std::vector<ArrowId> inverse;  // per arrow
    std::vector<ArrowId> table;    // arrows*arrows, kNone if undefined
  };

  FiniteGroupoid() = default;
  explicit FiniteGroupoid(Data data);

  /// Builds the table by calling `compose` on every composable pair.
  static FiniteGroupoid build(std::vector<std::string> object_names,
                              std::vector<std::string> arrow_names,
                              std::vector<ObjectId> source,
                              std::vector<ObjectId> target,
                              std::vector<ArrowId> unit,
                              std::vector<ArrowId> inverse,
                              const std::function<ArrowId(ArrowId, ArrowId)>& compose);

  int num_objects() const { return static_cast<int>(d_.object_names.size()); }
  int num_arrows() const { return static_cast<int>(d_.arrow_names.size()); }
  ObjectId source(ArrowId g) const { return d_.source[g]; }
  ObjectId target(ArrowId g) const { return d_.target[g]; }
  ArrowId unit(ObjectId x) const { return d_.unit[x]; }
  ArrowId inverse(ArrowId g) const { return d_.inverse[g]; }
  bool composable(ArrowId g, ArrowId h) const { return source(g) == target(h); }
  /// g∘h; throws InvalidInput when not composable or undefined.
  ArrowId compose(ArrowId g, ArrowId h) const;
  /// Raw table entry (kNone when undefined).
  ArrowId table(ArrowId g, ArrowId h) const { return d_.table[g * num_arrows() + h]; }
  bool is_unit(ArrowId g) const { return unit(source(g)) == g; }

  const std::string& object_name(ObjectId x) const { return d_.object_names[x]; }
  const std::string& arrow_name(ArrowId g) const { return d_.arrow_names[g]; }
  ObjectId find_object(const std::string& name) const;
  ArrowId find_arrow(const std::string& name) const;

  const std::vector<std::pair<ArrowId, ArrowId>>& composable_pairs() const {
    return pairs_;
  }
  /// Arrows y <- x, in id order.
  std::vector<ArrowId> hom(ObjectId y, ObjectId x) const;
  const Data& data() const { return d_; }

  /// Overrides one table entry; used to build corrupted fixtures.
  void set_table_entry(ArrowId g, ArrowId h, ArrowId gh);

  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    return a.d_.source == b.d_.source && a.d_.target == b.d_.target &&
           a.d_.unit == b.d_.unit && a.d_.inverse == b.d_.inverse &&
           a.d_.table == b.d_.table;
  }

 private:
  Data d_;
  std::vector<std::pair<ArrowId, ArrowId>> pairs_;
  std::map<std::string, ObjectId> object_index_;
  std::map<std::string, ArrowId> arrow_index_;
};

/// Functor between finite groupoids.
struct GroupoidMap {
  const FiniteGroupoid* domain = nullptr;
  const FiniteGroupoid* codomain = nullptr;
  std::vector<ObjectId> object_map;
  std::vector<ArrowId> arrow_map;

  ObjectId obj(ObjectId x) const { return object_map[x]; }
  ArrowId arr(ArrowId g) const { return arrow_map[g]; }
};

GroupoidMap identity_map(const FiniteGroupoid& g);
/// f2 ∘ f1.
GroupoidMap compose_maps(const GroupoidMap& f2, const GroupoidMap& f1);
bool same_map(const GroupoidMap& a, const GroupoidMap& b);

Report validate_groupoid(const FiniteGroupoid& g);
Report validate_functor(const GroupoidMap& f);

struct OrbitData {
  std::vector<int> orbit_of;                 // per object
  std::vector<std::vector<ObjectId>> orbits;  // sorted members
  std::vector<std::vector<ArrowId>> isotropy;  // per object
};

OrbitData orbits_and_isotropy(const FiniteGroupoid& g);

struct MoritaCertificate {
  bool is_morita = false;
  bool orbit_bijection = false;
  bool isotropy_isomorphisms = false;
  bool fully_faithful = false;
  bool essentially_surjective = false;
  std::vector<int> orbit_map;  // domain orbit -> codomain orbit
  std::vector<std::string> witnesses;
};

/// Orbit bijection plus isotropy isomorphisms; fully-faithful and
/// essentially-surjective are computed independently as a cross-check.
MoritaCertificate is_morita(const GroupoidMap& f);

/// A composable string. For degree 0 `arrows` is empty and `object` is the
/// vertex; otherwise `object` is target(arrows[0]).
struct Chain {
  ObjectId object = 0;
  std::vector<ArrowId> arrows;
  std::size_t degree() const { return arrows.size(); }
  friend bool operator==(const Chain&, const Chain&) = default;
};

class NerveStrings {
 public:
  NerveStrings(const FiniteGroupoid& g, int p_max);
  int p_max() const { return static_cast<int>(strings_.size()) - 1; }
  const std::vector<Chain>& degree(int p) const { return strings_.at(p); }
  std::size_t index_of(const Chain& c) const;
  /// Face map ∂_i on a degree-p string (0 <= i <= p).
  Chain face(const Chain& c, int i) const;

 private:
  const FiniteGroupoid* g_;
  std::vector<std::vector<Chain>> strings_;
  std::vector<std::map<std::vector<int>, std::size_t>> index_;
};

Chain face(const FiniteGroupoid& g, const Chain& c, int i);

struct ArrowGroupoid {
  FiniteGroupoid groupoid;
  /// Triple (g', h, g) per arrow: an arrow from object g to object g'.
  std::vector<std::array<ArrowId, 3>> triples;
  GroupoidMap sigma, tau;  // to the base
  GroupoidMap mu;          // from the base
};

/// Arrow groupoid G^I. σ(g',h,g) = h∘g and τ(g',h,g) = g'∘h on arrows,
/// μ(g) = (1_{t g}, g, 1_{s g}).
std::unique_ptr<ArrowGroupoid> arrow_groupoid(const FiniteGroupoid& g);

struct CechGroupoid {
  FiniteGroupoid groupoid;
  std::vector<std::vector<ObjectId>> cover;
  std::vector<std::pair<ObjectId, int>> objects;         // (x, i)
  std::vector<std::array<int, 3>> arrows;                // (g, j, i)
  GroupoidMap projection;                                 // π_U
  std::vector<ArrowId> kernel_arrows;                     // (1_x, j, i)
  ObjectId object_id(ObjectId x, int i) const;
  ArrowId arrow_id(ArrowId g, int j, int i) const;
  /// Least cover index containing x.
  int min_index(ObjectId x) const;
  std::vector<int> indices_containing(ObjectId x) const;
};

/// Čech groupoid of a cover of the objects (each U_i sorted, union = M).
std::unique_ptr<CechGroupoid> cech_groupoid(const FiniteGroupoid& g,
                                            std::vector<std::vector<ObjectId>> cover);

namespace fixtures {
FiniteGroupoid point();
FiniteGroupoid cyclic(int n);
FiniteGroupoid pair(int n);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
FiniteGroupoid product(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// Action groupoid of the symmetric group S3 on {0,1,2}.
FiniteGroupoid s3_on_three_points();
/// Collapse functor onto the point groupoid.
GroupoidMap collapse(const FiniteGroupoid& g, const FiniteGroupoid& pt);
}  // namespace fixtures

}  // namespace vbg
