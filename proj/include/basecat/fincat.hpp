#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "basecat/error.hpp"

namespace basecat {

using ObjectIndex = std::size_t;
using MorphismIndex = std::size_t;

inline constexpr MorphismIndex kNoMorphism = static_cast<MorphismIndex>(-1);

/// Suffix marking a morphism of an opposite category. Reserved in user ids.
inline constexpr std::string_view kOpTag = "_op";

struct Morphism {
  std::string id;
  ObjectIndex dom = 0;
  ObjectIndex cod = 0;

  bool operator==(const Morphism&) const = default;
};

// ---------------------------------------------------------------------------
// Raw (unvalidated) presentations, as written in `.bcat` files.

struct RawArrow {
  std::string id, dom, cod;
  bool operator==(const RawArrow&) const = default;
};

struct RawComposite {
  std::string g, f, result;  // g . f = result
  bool operator==(const RawComposite&) const = default;
};

struct RawCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  /// Explicit identity ids (object, morphism). Objects not listed get `id_<object>`.
  std::vector<std::pair<std::string, std::string>> identities;
  std::vector<RawComposite> compose;

  bool operator==(const RawCategory&) const = default;
};

struct RawFunctor {
  std::string name, source, target;
  std::vector<std::pair<std::string, std::string>> objects;
  std::vector<std::pair<std::string, std::string>> arrows;

  bool operator==(const RawFunctor&) const = default;
};

std::string default_identity_id(std::string_view object);

// ---------------------------------------------------------------------------

/// A validated, explicitly presented finite category. Immutable; every
/// composable pair has a composite and the unit and associativity laws hold.
class FinCat {
 public:
  class Builder;

  const std::string& name() const noexcept { return name_; }
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }

  std::span<const std::string> objects() const noexcept { return objects_; }
  std::span<const Morphism> morphisms() const noexcept { return morphisms_; }
  const std::string& object_id(ObjectIndex x) const { return objects_.at(x); }
  const Morphism& morphism(MorphismIndex m) const { return morphisms_.at(m); }
  const std::string& morphism_id(MorphismIndex m) const { return morphisms_.at(m).id; }
  ObjectIndex dom(MorphismIndex m) const { return morphisms_.at(m).dom; }
  ObjectIndex cod(MorphismIndex m) const { return morphisms_.at(m).cod; }

  std::optional<ObjectIndex> find_object(std::string_view id) const;
  std::optional<MorphismIndex> find_morphism(std::string_view id) const;
  /// Throws ValidationError(UnknownObject / UnknownMorphism).
  ObjectIndex object_index(std::string_view id) const;
  MorphismIndex morphism_index(std::string_view id) const;

  MorphismIndex identity(ObjectIndex x) const { return identity_.at(x); }
  bool is_identity(MorphismIndex m) const { return identity_.at(morphisms_.at(m).dom) == m; }
  bool composable(MorphismIndex g, MorphismIndex f) const { return cod(f) == dom(g); }

  /// g . f, or nullopt when cod f != dom g.
  std::optional<MorphismIndex> try_compose(MorphismIndex g, MorphismIndex f) const;
  /// g . f; throws std::logic_error when not composable.
  MorphismIndex compose(MorphismIndex g, MorphismIndex f) const;

  const std::vector<MorphismIndex>& hom(ObjectIndex a, ObjectIndex b) const {
    return hom_.at(a * objects_.size() + b);
  }

  /// Two-sided inverse of m, if any.
  std::optional<MorphismIndex> inverse(MorphismIndex m) const;

  bool operator==(const FinCat& other) const;

 private:
  friend FinCat opposite(const FinCat&);
  friend FinCat normalize(const FinCat&, std::string);

  FinCat() = default;
  void index_homs();

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismIndex> identity_;
  std::vector<MorphismIndex> table_;  // row g, column f
  std::vector<std::vector<MorphismIndex>> hom_;
};

using CatRef = std::shared_ptr<const FinCat>;

/// Index-level construction of a category; `build()` runs the full law check.
class FinCat::Builder {
 public:
  explicit Builder(std::string name) : name_(std::move(name)) {}

  /// Throws DuplicateId.
  ObjectIndex add_object(std::string id);
  /// Throws DuplicateId.
  MorphismIndex add_morphism(std::string id, ObjectIndex dom, ObjectIndex cod);
  void set_identity(ObjectIndex x, MorphismIndex m);
  /// Records g . f = r. Throws DomCodMismatch / ConflictingComposite / UnitLawViolation.
  void set_compose(MorphismIndex g, MorphismIndex f, MorphismIndex r);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const std::string& object_id(ObjectIndex x) const { return objects_.at(x); }
  const Morphism& morphism(MorphismIndex m) const { return morphisms_.at(m); }
  std::optional<ObjectIndex> find_object(std::string_view id) const;
  std::optional<MorphismIndex> find_morphism(std::string_view id) const;

  /// Fills unit-law composites, then checks totality and associativity.
  /// Throws MissingComposite / AssociativityViolation / UnitLawViolation.
  FinCat build() &&;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismIndex> identity_;
  std::vector<std::tuple<MorphismIndex, MorphismIndex, MorphismIndex>> composites_;
};

/// Validates a raw presentation. Identities are synthesized as `id_<object>`
/// unless declared; composites with an identity factor are filled by the unit
/// laws; every other composable pair must be listed.
FinCat validate_category(const RawCategory& raw);

/// Inverse of validate_category up to identity synthesis: only non-identity
/// arrows, non-unit composites and non-default identity ids are emitted.
RawCategory to_raw(const FinCat& cat);

// ---------------------------------------------------------------------------

class FinFunctor {
 public:
  /// Checks all functor laws; throws ValidationError on the first violation.
  FinFunctor(std::string name, CatRef source, CatRef target, std::vector<ObjectIndex> object_map,
             std::vector<MorphismIndex> morphism_map);

  static FinFunctor identity(CatRef cat, std::string name = {});

  const std::string& name() const noexcept { return name_; }
  const FinCat& source() const noexcept { return *source_; }
  const FinCat& target() const noexcept { return *target_; }
  const CatRef& source_ref() const noexcept { return source_; }
  const CatRef& target_ref() const noexcept { return target_; }

  ObjectIndex map_object(ObjectIndex x) const { return object_map_.at(x); }
  MorphismIndex map_morphism(MorphismIndex m) const { return morphism_map_.at(m); }
  const std::vector<ObjectIndex>& object_map() const noexcept { return object_map_; }
  const std::vector<MorphismIndex>& morphism_map() const noexcept { return morphism_map_; }

  bool is_identity() const;
  bool bijective() const;

  /// Same maps between structurally equal categories (names ignored).
  bool same_maps(const FinFunctor& other) const;

 private:
  std::string name_;
  CatRef source_, target_;
  std::vector<ObjectIndex> object_map_;
  std::vector<MorphismIndex> morphism_map_;
};

/// Identity entries may be omitted; they are completed from the object map.
FinFunctor validate_functor(const RawFunctor& raw, CatRef source, CatRef target);
RawFunctor to_raw(const FinFunctor& functor);

/// g . f. Throws SourceTargetMismatch when target f != source g.
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

struct IsoWitness {
  FinFunctor forward;
  FinFunctor backward;
};

/// Throws unless backward . forward and forward . backward are identities.
void validate_iso(const IsoWitness& witness);

// ---------------------------------------------------------------------------
// Structural operations.

/// Same objects; morphism ids tagged with `_op`; dom/cod swapped.
FinCat opposite(const FinCat& cat);

/// The same maps between the opposite categories.
FinFunctor opposite_functor(const FinFunctor& f);

/// Equal presentations, names ignored.
bool same_presentation(const FinCat& a, const FinCat& b);

/// Removes every `_op` tag that ends an id component.
std::string erase_op_tags(std::string_view id);

/// Presentation with tags erased and objects/morphisms sorted by id. Equality
/// of normalized presentations is the notion of "identical" categories.
FinCat normalize(const FinCat& cat, std::string name = "normalized");

struct ProductCategory {
  CatRef product;
  FinFunctor first;
  FinFunctor second;
};

ProductCategory product_category(const CatRef& left, const CatRef& right);

struct Coproduct {
  CatRef sum;
  std::vector<FinFunctor> injections;
};

Coproduct coproduct_categories(const std::vector<CatRef>& parts, std::string name = {});

// ---------------------------------------------------------------------------
// Isomorphism search.

struct NotIsomorphic {
  std::string reason;
};
struct BudgetExhausted {
  std::uint64_t nodes = 0;
};

using IsoResult = std::variant<IsoWitness, NotIsomorphic, BudgetExhausted>;

/// Node budget from BASECAT_BUDGET, default 2'000'000.
std::uint64_t default_budget();

/// Backtracking over object bijections pruned by hom-set cardinality
/// profiles, then over morphism bijections respecting dom/cod, identities
/// and composition.
IsoResult find_isomorphism(const CatRef& c, const CatRef& d, std::uint64_t budget = default_budget());

/// Calls `visit` on functors source -> target in deterministic order (or in the
/// order induced by `shuffle`, when given) until it returns false or the node
/// budget runs out. Returns the number of functors visited.
std::size_t search_functors(const CatRef& source, const CatRef& target,
                            const std::function<bool(const FinFunctor&)>& visit,
                            std::uint64_t budget = default_budget(),
                            const std::function<void(std::vector<std::size_t>&)>& shuffle = {});

}  // namespace basecat
