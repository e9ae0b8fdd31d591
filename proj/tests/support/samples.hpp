#pragma once
// Small categories and functors built directly from raw presentations, so that
// module tests do not depend on the DSL.

#include <algorithm>
#include <array>
#include <memory>
#include <string>
#include <vector>

#include "basecat/constructions.hpp"
#include "basecat/fincat.hpp"
#include "basecat/finset.hpp"

namespace samples {

using namespace basecat;

inline CatRef make(const RawCategory& raw) { return std::make_shared<const FinCat>(validate_category(raw)); }

inline CatRef terminal(std::string name = "One") { return make({std::move(name), {"*"}, {}, {}, {}}); }

inline CatRef two(std::string name = "Two") { return make({std::move(name), {"X", "Y"}, {{"f", "X", "Y"}}, {}, {}}); }

inline CatRef z2(std::string name = "Z2") {
  return make({std::move(name), {"*"}, {{"s", "*", "*"}}, {{"*", "e"}}, {{"s", "s", "e"}}});
}

inline CatRef z3(std::string name = "Z3") {
  return make({std::move(name),
               {"*"},
               {{"r", "*", "*"}, {"r2", "*", "*"}},
               {{"*", "e"}},
               {{"r", "r", "r2"}, {"r", "r2", "e"}, {"r2", "r", "e"}, {"r2", "r2", "r"}}});
}

/// X -f-> Y -g-> Z with the composite h.
inline CatRef path3(std::string name = "Path3") {
  return make({std::move(name),
               {"X", "Y", "Z"},
               {{"f", "X", "Y"}, {"g", "Y", "Z"}, {"h", "X", "Z"}},
               {},
               {{"g", "f", "h"}}});
}

/// Two objects and two parallel arrows.
inline CatRef parallel(std::string name = "Par") {
  return make({std::move(name), {"A", "B"}, {{"p", "A", "B"}, {"q", "A", "B"}}, {}, {}});
}

/// One object with an idempotent: i . i = i.
inline CatRef idempotent(std::string name = "Idem") {
  return make({std::move(name), {"*"}, {{"i", "*", "*"}}, {}, {{"i", "i", "i"}}});
}

inline FinFunctor functor(const RawFunctor& raw, CatRef s, CatRef t) { return validate_functor(raw, s, t); }

inline FinFunctor collapse(CatRef source, CatRef terminal_cat) {
  RawFunctor raw{"collapse", source->name(), terminal_cat->name(), {}, {}};
  for (const auto& x : source->objects()) raw.objects.emplace_back(x, "*");
  for (MorphismIndex m = 0; m < source->morphism_count(); ++m)
    if (!source->is_identity(m)) raw.arrows.emplace_back(source->morphism_id(m), terminal_cat->morphism_id(0));
  return validate_functor(raw, source, terminal_cat);
}

/// Permutations of {0,1,2} in lexicographic order, named e, p1..p5.
inline std::vector<std::array<int, 3>> s3_elements() {
  std::vector<std::array<int, 3>> out;
  std::array<int, 3> p{0, 1, 2};
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::string s3_name(std::size_t i) { return i == 0 ? "e" : "p" + std::to_string(i); }

/// S3 as a one-object category; a . b is "apply b, then a".
inline CatRef s3(std::string name = "S3") {
  auto els = s3_elements();
  RawCategory raw{std::move(name), {"*"}, {}, {{"*", "e"}}, {}};
  for (std::size_t i = 1; i < els.size(); ++i) raw.arrows.push_back({s3_name(i), "*", "*"});
  for (std::size_t a = 1; a < els.size(); ++a)
    for (std::size_t b = 1; b < els.size(); ++b) {
      std::array<int, 3> ab{};
      for (int k = 0; k < 3; ++k) ab[k] = els[a][els[b][k]];
      auto it = std::find(els.begin(), els.end(), ab);
      raw.compose.push_back({s3_name(a), s3_name(b), s3_name(static_cast<std::size_t>(it - els.begin()))});
    }
  return make(raw);
}

inline GroupAction action(std::string name, CatRef group, std::vector<std::string> set,
                          std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> phi) {
  return validate_action({std::move(name), group->name(), std::move(set), std::move(phi)}, group);
}

inline GroupAction z2swap() { return action("z2swap", z2(), {"0", "1"}, {{"s", {{"0", "1"}, {"1", "0"}}}}); }
inline GroupAction z2trivial() { return action("z2trivial", z2(), {"0", "1"}, {{"s", {{"0", "0"}, {"1", "1"}}}}); }
inline GroupAction z3regular() {
  return action("z3regular", z3(), {"0", "1", "2"},
                {{"r", {{"0", "1"}, {"1", "2"}, {"2", "0"}}}, {"r2", {{"0", "2"}, {"1", "0"}, {"2", "1"}}}});
}
inline GroupAction s3natural() {
  auto els = s3_elements();
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> phi;
  for (std::size_t i = 1; i < els.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int k = 0; k < 3; ++k) pairs.emplace_back(std::to_string(k), std::to_string(els[i][k]));
    phi.emplace_back(s3_name(i), pairs);
  }
  return action("s3natural", s3(), {"0", "1", "2"}, phi);
}

inline ConcreteStructure concrete(const RawConcrete& raw, CatRef over) { return validate_concrete(raw, std::move(over)); }

}  // namespace samples
