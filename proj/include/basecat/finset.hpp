#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "basecat/fincat.hpp"

namespace basecat {

/// A finite set with named, pairwise distinct elements.
struct FinSetObj {
  std::string id;
  std::vector<std::string> elements;

  std::size_t size() const noexcept { return elements.size(); }
  std::optional<std::size_t> find(std::string_view element) const;
  bool operator==(const FinSetObj&) const = default;
};

/// Throws DuplicateId.
FinSetObj make_finset(std::string id, std::vector<std::string> elements);

/// Total function; `map[i]` is the index in `cod` of the image of element i.
struct FinFn {
  FinSetObj dom, cod;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t i) const { return map.at(i); }
  bool operator==(const FinFn&) const = default;
};

/// From (element, image) pairs. `name` labels errors: PartialFunction(name, x)
/// when x is unmapped, UnknownElement(name, x) for foreign ids, DuplicateId(x).
FinFn make_fn(const FinSetObj& dom, const FinSetObj& cod, const std::vector<std::pair<std::string, std::string>>& pairs,
              const std::string& name);
FinFn identity_fn(const FinSetObj& set);
/// g after f. Throws CodomainMismatch unless cod f == dom g.
FinFn compose_fn(const FinFn& g, const FinFn& f);
bool is_identity_fn(const FinFn& f);

// ---------------------------------------------------------------------------

struct RawConcrete {
  std::string name, over;
  std::vector<std::pair<std::string, std::vector<std::string>>> carriers;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> actions;

  bool operator==(const RawConcrete&) const = default;
};

/// A functor from `over` to FinSet given by carriers and functions.
/// Functorial always; faithful unless built with allow_unfaithful.
class ConcreteStructure {
 public:
  ConcreteStructure(std::string name, CatRef over, std::vector<FinSetObj> carrier, std::vector<FinFn> action);

  const std::string& name() const noexcept { return name_; }
  const FinCat& over() const noexcept { return *over_; }
  const CatRef& over_ref() const noexcept { return over_; }
  const FinSetObj& carrier(ObjectIndex x) const { return carrier_.at(x); }
  const FinFn& action(MorphismIndex m) const { return action_.at(m); }
  const std::vector<FinSetObj>& carriers() const noexcept { return carrier_; }
  const std::vector<FinFn>& actions() const noexcept { return action_; }

 private:
  std::string name_;
  CatRef over_;
  std::vector<FinSetObj> carrier_;
  std::vector<FinFn> action_;
};

struct ConcreteOptions {
  /// Downgrade NotFaithful to a warning.
  bool allow_unfaithful = false;
  std::vector<std::string>* warnings = nullptr;
};

/// Checks, in order: carriers and functions present and total, identities act
/// as identities, functoriality (NotFunctorial(g,f)), faithfulness
/// (NotFaithful(f1,f2) for the first colliding parallel pair).
ConcreteStructure validate_concrete(const RawConcrete& raw, CatRef over, ConcreteOptions options = {});
RawConcrete to_raw(const ConcreteStructure& u);

/// Same checks on already-indexed data.
ConcreteStructure make_concrete(std::string name, CatRef over, std::vector<FinSetObj> carrier, std::vector<FinFn> action,
                                ConcreteOptions options = {});

// ---------------------------------------------------------------------------

struct Pullback {
  FinSetObj object;
  FinFn p1, p2;
};

/// P = {(a,b) : f(a) = g(b)} with elements named `(a,b)` in lexicographic
/// index order. Throws CodomainMismatch unless cod f == cod g.
Pullback pullback_finset(const FinFn& f, const FinFn& g);

/// Commuting square f . p1 = g . p2.
struct Square {
  FinSetObj apex;
  FinFn p1, p2, f, g;
};

struct UniversalOk {};
struct PullbackCounterexample {
  FinSetObj probe;
  FinFn q1, q2;
  std::size_t mediating = 0;
};
using UniversalResult = std::variant<UniversalOk, PullbackCounterexample>;

/// Every cone from a set of at most `probe` elements must factor through the
/// apex exactly once. Throws std::invalid_argument when the square does not
/// commute or is ill-typed.
UniversalResult verify_pullback_universal(const Square& square, std::size_t probe);

Square square_of(const Pullback& p, const FinFn& f, const FinFn& g);

}  // namespace basecat
