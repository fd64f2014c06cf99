#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vbg/descent.hpp"

namespace vbg {

using Json = nlohmann::ordered_json;
inline constexpr int kFormatVersion = 1;

/// Malformed or unresolvable instance data.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// "p/q", q omitted when 1.
std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);
/// Row-major nested arrays of rational strings.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json groupoid_to_json(const FiniteGroupoid& g);
FiniteGroupoid groupoid_from_json(const Json& j);

struct CoverEntry {
  std::string base;
  std::unique_ptr<CechGroupoid> cech;
};
struct PartitionEntry {
  std::string cover;
  PartitionOfUnity weights;
};

/// Named objects of one instance file, in file order. References point to
/// earlier entries; a cover name used as a base stands for its Čech groupoid.
/// Every owned object keeps a stable address for the instance's lifetime.
class Instance {
 public:
  using Payload =
      std::variant<std::unique_ptr<FiniteGroupoid>, std::unique_ptr<GroupoidMap>,
                   std::unique_ptr<CoverEntry>, std::unique_ptr<PartitionEntry>,
                   std::unique_ptr<TwoTermRuth>, std::unique_ptr<RuthMorphism>,
                   std::unique_ptr<VBGroupoid>, std::unique_ptr<VBMap>>;
  struct Entry {
    std::string name;
    Payload payload;
  };

  static Instance from_json(const Json& j);
  static Instance load(const std::string& path);
  /// The dependency closure of `names`, in entry order.
  Json to_json(const std::vector<std::string>& names) const;

  const FiniteGroupoid& add(const std::string& name, FiniteGroupoid g);
  const GroupoidMap& add(const std::string& name, GroupoidMap f);
  const CechGroupoid& add_cover(const std::string& name, const std::string& base,
                                std::vector<std::vector<ObjectId>> sets);
  const PartitionOfUnity& add_partition(const std::string& name, const std::string& cover,
                                        PartitionOfUnity l);
  const TwoTermRuth& add(const std::string& name, TwoTermRuth r);
  const RuthMorphism& add(const std::string& name, RuthMorphism m);
  const VBGroupoid& add(const std::string& name, VBGroupoid v);
  const VBMap& add(const std::string& name, VBMap f);

  bool contains(const std::string& name) const;
  const Entry& entry(const std::string& name) const;
  const std::vector<std::unique_ptr<Entry>>& entries() const { return entries_; }
  std::string type_name(const std::string& name) const;

  /// A groupoid entry, or the Čech groupoid of a cover entry.
  const FiniteGroupoid& groupoid(const std::string& name) const;
  const GroupoidMap& functor(const std::string& name) const;
  const CechGroupoid& cover(const std::string& name) const;
  const PartitionEntry& partition(const std::string& name) const;
  const TwoTermRuth& ruth(const std::string& name) const;
  const RuthMorphism& ruth_morphism(const std::string& name) const;
  const VBGroupoid& vbgroupoid(const std::string& name) const;
  const VBMap& vbmap(const std::string& name) const;

 private:
  Entry& insert(const std::string& name, Payload p);
  std::string groupoid_name(const FiniteGroupoid* g) const;
  std::string functor_name(const GroupoidMap& f) const;
  std::string pointer_name(const void* p) const;
  std::vector<std::string> dependencies(const Entry& e) const;
  Json entry_json(const Entry& e) const;

  std::vector<std::unique_ptr<Entry>> entries_;
};

}  // namespace vbg
