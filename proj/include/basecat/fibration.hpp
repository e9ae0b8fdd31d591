#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "basecat/cleavage.hpp"
#include "basecat/constructions.hpp"
#include "basecat/fincat.hpp"

namespace basecat {

/// P : E -> B under scrutiny. Labels are optional and only used to name
/// recovered fibres.
struct FunctorOver {
  FinFunctor proj;
  std::vector<PairLabel> object_labels;
  std::vector<PairLabel> morphism_labels;

  static FunctorOver from(const ConstructedCategory& c);

  const FinCat& total() const { return proj.source(); }
  const FinCat& base() const { return proj.target(); }
  bool vertical(MorphismIndex m) const { return base().is_identity(proj.map_morphism(m)); }
};

struct Holds {};

/// (g, w) with `candidates` mediating h over w instead of exactly one.
struct LiftCounterexample {
  LiftKind kind = LiftKind::Cartesian;
  MorphismIndex f = kNoMorphism, g = kNoMorphism, w = kNoMorphism;
  std::size_t candidates = 0;
};
using LiftCheck = std::variant<Holds, LiftCounterexample>;

/// Every g into cod f and every w with u . w = P(g) (u = P(f)) has exactly one
/// h over w with f . h = g. Steps are counted against `budget`; running out
/// throws BudgetExhausted.
LiftCheck is_cartesian(const FunctorOver& p, MorphismIndex f, std::uint64_t budget = default_budget());
/// Dual: every g out of dom f and w with w . u = P(g) has one h with h . f = g.
LiftCheck is_opcartesian(const FunctorOver& p, MorphismIndex f, std::uint64_t budget = default_budget());
/// By id; throws UnknownMorphism.
LiftCheck is_cartesian(const FunctorOver& p, std::string_view f, std::uint64_t budget = default_budget());
LiftCheck is_opcartesian(const FunctorOver& p, std::string_view f, std::uint64_t budget = default_budget());

/// Base morphism u and total object Y (over cod u, or dom u for MissingOpLift)
/// with no (op)cartesian lift.
struct MissingLift {
  LiftKind kind = LiftKind::Cartesian;
  MorphismIndex u = kNoMorphism;
  ObjectIndex y = 0;
};
using FibrationCheck = std::variant<Cleavage, MissingLift>;

/// First (op)cartesian lift in morphism order for every (u, Y).
FibrationCheck check_fibration(const FunctorOver& p, std::uint64_t budget = default_budget());
FibrationCheck check_opfibration(const FunctorOver& p, std::uint64_t budget = default_budget());

/// The cleavage a construction fixes: the stored one when it has the right
/// kind, otherwise the unique morphism over u at Y. Throws NoLiftInCleavage
/// when several morphisms compete and the recipe does not choose.
Cleavage canonical_cleavage(const ConstructedCategory& c, LiftKind kind);

/// A required entry that is missing, off-shape, or not (op)cartesian.
struct CleavageDefect {
  MorphismIndex u = kNoMorphism;
  ObjectIndex y = 0;
  std::string reason;
};
std::variant<Holds, CleavageDefect> validate_cleavage(const FunctorOver& p, const Cleavage& c,
                                                      std::uint64_t budget = default_budget());

/// Identity law (v = u = the identity at `at`) or composition law for v . u.
struct SplitViolation {
  bool identity_law = false;
  MorphismIndex v = kNoMorphism, u = kNoMorphism;
  ObjectIndex at = 0;
};
std::variant<Holds, SplitViolation> check_split(const FunctorOver& p, const Cleavage& c);

/// g = f . h with f the cleavage's lift at (P(g), cod g) and h vertical.
struct Factorization {
  MorphismIndex h = kNoMorphism, f = kNoMorphism;
};
/// Throws NoLiftInCleavage(u, Y) if the cleavage has no entry and
/// NotCartesian(f, g) unless exactly one vertical h fits.
Factorization factor_vertical_cartesian(const FunctorOver& p, const Cleavage& c, MorphismIndex g);

/// A pair (g, f) of cartesian morphisms whose composite g . f is not, or a
/// cartesian f over an isomorphism that is not itself invertible (g unset).
struct PropertyCounterexample {
  MorphismIndex g = kNoMorphism, f = kNoMorphism;
};
std::variant<Holds, PropertyCounterexample> property_cartesian_compose(const FunctorOver& p,
                                                                      std::uint64_t budget = default_budget());
std::variant<Holds, PropertyCounterexample> property_cartesian_over_iso(const FunctorOver& p,
                                                                       std::uint64_t budget = default_budget());

/// Fibres are the preimages of identities; pull(u) is the change of base
/// induced by the split cleavage. Throws NotSplit(v,u) when it is not split.
IndexedFamily recover_indexed(const FunctorOver& p, const Cleavage& c);

/// Renderings with full ids, for reports.
std::string describe(const FunctorOver& p, const LiftCounterexample& c);
std::string describe(const FunctorOver& p, const MissingLift& m);
std::string describe(const FunctorOver& p, const SplitViolation& s);
std::string describe(const FunctorOver& p, const PropertyCounterexample& c);

}  // namespace basecat
