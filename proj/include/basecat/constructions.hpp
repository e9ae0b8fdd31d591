#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "basecat/cleavage.hpp"
#include "basecat/fincat.hpp"
#include "basecat/finset.hpp"
#include "basecat/report.hpp"

namespace basecat {

/// Which recipe produced a constructed category.
enum class Provenance { Def1, Def2, Def3, Def4, Def5, Def6, Def7, Def8, Grothendieck, TransGroupoid };

std::string_view to_string(Provenance p) noexcept;

/// `(first,second)`, or `(first,second,extra)` when the short form would
/// collide with another morphism of the same category.
struct PairLabel {
  std::string first, second;
  std::optional<std::string> extra = std::nullopt;

  std::string render() const;
  bool operator==(const PairLabel&) const = default;
};

/// A category built over a base together with its first projection.
/// object_labels/morphism_labels run parallel to the indices of `cat`. Labels
/// render to the ids they label, except that transformation-groupoid objects
/// are the bare elements and opposites keep the labels of the original.
struct ConstructedCategory {
  CatRef cat;
  FinFunctor projection;  // cat -> base
  Provenance provenance;
  std::vector<PairLabel> object_labels;
  std::vector<PairLabel> morphism_labels;
  std::optional<Cleavage> cleavage;  // canonical one, when the recipe fixes it

  const FinCat& base() const { return projection.target(); }
  const CatRef& base_ref() const { return projection.target_ref(); }
};

/// Category and projection replaced by their opposites; same provenance.
ConstructedCategory opposite(const ConstructedCategory& c);

// ---------------------------------------------------------------------------
// Indexed families and group actions.

/// Strict contravariant family over `base`: pull[u] : fibre[cod u] -> fibre[dom u].
struct IndexedFamily {
  std::string name;
  CatRef base;
  std::vector<CatRef> fibre;      // per base object
  std::vector<FinFunctor> pull;   // per base morphism; identities included
};

/// Pulls for identities may be omitted and default to identity functors;
/// every other base morphism needs one. Throws UnmappedObject/UnmappedMorphism,
/// SourceTargetMismatch(pull, fibre) for mistyped pulls, NotStrict(v,u).
IndexedFamily make_indexed(std::string name, CatRef base, const std::vector<std::pair<std::string, CatRef>>& fibres,
                           const std::vector<std::pair<std::string, FinFunctor>>& pulls);

/// Re-checks strictness: pull(id) = id and pull(v . u) = pull(u) . pull(v).
/// Throws NotStrict naming the offending pair.
void check_strict(const IndexedFamily& fam);

struct RawAction {
  std::string name, group;
  std::vector<std::string> set;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> phi;

  bool operator==(const RawAction&) const = default;
};

/// Left action of a one-object groupoid on a finite set.
struct GroupAction {
  std::string name;
  CatRef group;
  FinSetObj carrier;
  std::vector<FinFn> phi;  // per group morphism
};

/// Throws NotAGroup(m) unless the group has one object and every morphism is
/// invertible; phi errors as for concrete structures (PartialFunction,
/// UnknownElement, UnmappedMorphism, NotFunctorial(g,f)).
GroupAction validate_action(const RawAction& raw, CatRef group);
RawAction to_raw(const GroupAction& act);

// ---------------------------------------------------------------------------
// Constructions. All results are validated by the category builder, so every
// law is re-checked on the constructed table.

/// (X,FX), (f,Ff) over C.
ConstructedCategory graph_category(const FinFunctor& f);
/// (X,x) for x in U(FX); (f,x) : (X,x) -> (Y,Uf(x)) over C.
ConstructedCategory concrete_graph_category(const FinFunctor& f, const ConcreteStructure& u);

/// Each object becomes a one-object category, each morphism the unique
/// functor between two of them.
struct TrivialCategorification {
  std::vector<CatRef> fibre;         // per object of D
  std::vector<FinFunctor> functor;   // per morphism of D
};
TrivialCategorification trivial_categorify(const CatRef& d);

/// Over opposite(C): fibre(X) is the trivial category on FX, pull(f_op) = I(Ff).
IndexedFamily trivial_family(const FinFunctor& f);
/// Over opposite(C): fibre(X) is discrete on U(FX), pull(f_op) induced by U(Ff).
IndexedFamily discrete_family(const FinFunctor& f, const ConcreteStructure& u);

/// Objects (I,X); morphisms (u,phi) with phi : X -> pull(u)(Y); canonical cleavage.
ConstructedCategory grothendieck_strict(const IndexedFamily& fam);

/// (X,FX), (f_op, id_FY) : (Y,FY) -> (X,FX) over opposite(C).
ConstructedCategory abstract_right_action(const FinFunctor& f);
/// (X,FX), (f, id_FY) over C.
ConstructedCategory abstract_left_action(const FinFunctor& f);
/// (X,x), (f_op,y) : (Y,y) -> (X,x) with y = Uf(x), over opposite(C).
ConstructedCategory concrete_right_action(const FinFunctor& f, const ConcreteStructure& u);
/// (X,x), (f,y) : (X,x) -> (Y,y) with y = Uf(x), over C.
ConstructedCategory concrete_left_action(const FinFunctor& f, const ConcreteStructure& u);

/// Right action indexed directly over a self-dual C. The contravariant functor
/// is Fbar = F . w.backward. Without `u` the abstract version (f, id_FbarX);
/// with `u` the concrete one, (f,x) : (X,x) -> (Y,y) with x = U(Fbar f_op)(y).
/// Throws NoSelfDualWitness unless w is a validated C ~ C^op.
ConstructedCategory right_action_selfdual(const FinFunctor& f, const IsoWitness& w,
                                          const ConcreteStructure* u = nullptr);

/// Objects the carrier elements; (g,x) : x -> phi_g(x); over the group.
ConstructedCategory transformation_groupoid(const GroupAction& act);

// ---------------------------------------------------------------------------
// Bridges and verifiers.

/// The action as a functor into its image: one object, one morphism per
/// distinct function, with the inclusion as a faithful concrete structure.
struct ActionFunctor {
  CatRef image;
  FinFunctor functor;
  ConcreteStructure underlying;
};
ActionFunctor action_as_functor(const GroupAction& act);

/// C ~ C^op sending f to (f^-1)_op. Throws NotAGroup(f) for non-invertible f.
IsoWitness groupoid_inverse_witness(const CatRef& c);

/// Projection and its inverse, when the projection is bijective.
std::optional<IsoWitness> projection_witness(const ConstructedCategory& c);

struct NoConcreteIso {
  std::string reason;
};
/// Identity on object ids; each morphism goes to the one with the same
/// dom/cod ids lying over the same base morphism (op tags erased).
std::variant<IsoWitness, NoConcreteIso> concrete_iso(const ConstructedCategory& a, const ConstructedCategory& b);

struct Prop4Result {
  ConstructedCategory groupoid;
  ConstructedCategory right_action;  // Def8 over the group, inverse witness
  IsoWitness witness;                // groupoid -> right_action
};
Prop4Result verify_prop4(const GroupAction& act);

/// Legs: (i) first projections of Def1/Def5 are isomorphisms; (ii) Def7 too,
/// given a self-duality; (iii) Def2, Def6 and Def8 (or opposite(Def4)
/// without a witness) are pairwise isomorphic over C; (iv) with every
/// carrier nonempty and one of size >= 2, the concrete categories have more
/// objects than C.
Report verify_main_prop(const FinFunctor& f, const ConcreteStructure* u = nullptr, const IsoWitness* w = nullptr);

}  // namespace basecat
