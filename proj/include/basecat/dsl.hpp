#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "basecat/constructions.hpp"
#include "basecat/fincat.hpp"
#include "basecat/finset.hpp"

namespace basecat {

/// 1-based; length >= 1.
struct SourceSpan {
  std::string file;
  std::size_t line = 1, column = 1, length = 1;

  bool operator==(const SourceSpan&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnresolvedReference, DuplicateDeclaration };

  ParseError(Kind kind, SourceSpan span, std::string expected, std::string found);

  Kind kind() const noexcept { return kind_; }
  const SourceSpan& span() const noexcept { return span_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  Kind kind_;
  SourceSpan span_;
  std::string expected_, found_;
};

/// `indexed NAME over BASE { fibre I = C  pull u = F }`, by name.
struct RawIndexed {
  std::string name, base;
  std::vector<std::pair<std::string, std::string>> fibres;
  std::vector<std::pair<std::string, std::string>> pulls;

  bool operator==(const RawIndexed&) const = default;
};

enum class DeclKind { Category, Functor, Concrete, Action, Indexed };
std::string_view to_string(DeclKind k) noexcept;

using DeclBody = std::variant<RawCategory, RawFunctor, RawConcrete, RawAction, RawIndexed>;

struct Declaration {
  DeclBody body;
  SourceSpan span;  // the declaration keyword

  DeclKind kind() const noexcept { return static_cast<DeclKind>(body.index()); }
  const std::string& name() const;
  /// Structural: spans are ignored.
  bool operator==(const Declaration& other) const { return body == other.body; }
};

struct Document {
  std::vector<Declaration> decls;

  const Declaration* find(DeclKind kind, std::string_view name) const;
  bool operator==(const Document&) const = default;
};

/// Grammar, whitespace-insensitive, `#` comments to end of line:
///   category N { objects: x,+  arrows: (f: x -> y),+  identities: (x = m),+  compose: (g . f = h),+ }
///   functor N : C -> D { objects: (x |-> y),+  arrows: (f |-> g),+ }
///   concrete N over D { X: { e,* }  f: (e |-> e),* ... }
///   action N { group: G  set: { e,* }  (phi: g: (e |-> e),*)* }
///   indexed N over B { (fibre I = C | pull u = F)* }
/// Sections are optional, lists inside a present section are not empty.
/// Every reference must resolve, to an earlier declaration or within the
/// block; otherwise ParseError(UnresolvedReference).
Document parse(std::string_view text, std::string file = "<input>");

/// Byte offset and length of every token, for corruption tests. Throws
/// ParseError on lexical errors.
std::vector<std::pair<std::size_t, std::size_t>> token_offsets(std::string_view text);

/// Canonical text; parse(print(d)) == d.
std::string print(const Document& doc);
std::string print(const Declaration& decl);

Declaration declare(const FinCat& cat);
Declaration declare(const FinFunctor& f);
Declaration declare(const ConcreteStructure& u);
Declaration declare(const GroupAction& act);

// ---------------------------------------------------------------------------

/// Validated objects of a document, by name.
struct Library {
  std::map<std::string, CatRef> categories;
  std::map<std::string, FinFunctor> functors;
  std::map<std::string, ConcreteStructure> concretes;
  std::map<std::string, GroupAction> actions;
  std::map<std::string, IndexedFamily> families;
};

struct DeclResult {
  DeclKind kind;
  std::string name;
  std::optional<ValidationError> error;  // also set when a dependency failed
};

/// Validates every declaration in order; failures are recorded, not thrown.
std::vector<DeclResult> load(const Document& doc, Library& lib);

// ---------------------------------------------------------------------------

struct DotOptions {
  bool show_identities = false;
  bool cluster_by_fibre = false;
};

std::string export_dot(const FinCat& cat, const DotOptions& options = {});
/// With cluster_by_fibre, objects are grouped by their image under the projection.
std::string export_dot(const ConstructedCategory& cat, const DotOptions& options = {});

}  // namespace basecat
