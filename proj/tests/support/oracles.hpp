#pragma once
// Brute-force reference computations. These deliberately avoid the library's
// search code: they enumerate all maps and evaluate laws on raw tables.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "basecat/fincat.hpp"

namespace oracle {

using namespace basecat;

/// Composition table keyed by ids, unit composites included.
using Table = std::map<std::pair<std::string, std::string>, std::string>;

/// First (h,g,f) in lexicographic order of `order` with h.(g.f) != (h.g).f.
inline std::optional<std::tuple<std::string, std::string, std::string>> first_assoc_failure(
    const std::vector<std::string>& order, const Table& t) {
  auto get = [&](const std::string& g, const std::string& f) -> std::optional<std::string> {
    auto it = t.find({g, f});
    if (it == t.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& h : order)
    for (const auto& g : order)
      for (const auto& f : order) {
        auto gf = get(g, f);
        auto hg = get(h, g);
        if (!gf || !hg) continue;
        auto left = get(h, *gf);
        auto right = get(*hg, f);
        if (left != right) return std::make_tuple(h, g, f);
      }
  return std::nullopt;
}

/// Law check straight from the definition, on index maps.
inline bool is_functor(const FinCat& s, const FinCat& t, const std::vector<ObjectIndex>& obj,
                       const std::vector<MorphismIndex>& mor) {
  for (ObjectIndex x = 0; x < s.object_count(); ++x)
    if (mor[s.identity(x)] != t.identity(obj[x])) return false;
  for (MorphismIndex m = 0; m < s.morphism_count(); ++m)
    if (t.dom(mor[m]) != obj[s.dom(m)] || t.cod(mor[m]) != obj[s.cod(m)]) return false;
  for (MorphismIndex g = 0; g < s.morphism_count(); ++g)
    for (MorphismIndex f = 0; f < s.morphism_count(); ++f)
      if (s.cod(f) == s.dom(g) && mor[s.compose(g, f)] != t.compose(mor[g], mor[f])) return false;
  return true;
}

/// Every functor s -> t, by enumerating all object maps and all morphism maps.
inline std::vector<std::pair<std::vector<ObjectIndex>, std::vector<MorphismIndex>>> all_functors(const FinCat& s,
                                                                                               const FinCat& t) {
  std::vector<std::pair<std::vector<ObjectIndex>, std::vector<MorphismIndex>>> out;
  const std::size_t no = s.object_count(), nm = s.morphism_count();
  std::vector<ObjectIndex> obj(no, 0);
  std::vector<MorphismIndex> mor(nm, 0);
  if (no > 0 && t.object_count() == 0) return out;
  if (nm > 0 && t.morphism_count() == 0) return out;
  std::function<void(std::size_t)> mors = [&](std::size_t k) {
    if (k == nm) {
      if (is_functor(s, t, obj, mor)) out.emplace_back(obj, mor);
      return;
    }
    for (MorphismIndex n = 0; n < t.morphism_count(); ++n) {
      mor[k] = n;
      mors(k + 1);
    }
  };
  std::function<void(std::size_t)> objs = [&](std::size_t k) {
    if (k == no) return mors(0);
    for (ObjectIndex y = 0; y < t.object_count(); ++y) {
      obj[k] = y;
      objs(k + 1);
    }
  };
  objs(0);
  return out;
}

/// Isomorphic iff some pair of object/morphism permutations is a functor.
inline bool isomorphic(const FinCat& c, const FinCat& d) {
  if (c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count()) return false;
  std::vector<ObjectIndex> obj(c.object_count());
  std::iota(obj.begin(), obj.end(), 0);
  do {
    std::vector<MorphismIndex> mor(c.morphism_count());
    std::iota(mor.begin(), mor.end(), 0);
    do {
      if (is_functor(c, d, obj, mor)) return true;
    } while (std::next_permutation(mor.begin(), mor.end()));
  } while (std::next_permutation(obj.begin(), obj.end()));
  return false;
}

}  // namespace oracle
