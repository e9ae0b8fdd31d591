#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "basecat/fincat.hpp"

namespace basecat {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("BASECAT_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 2'000'000;
}

namespace {

// Iso-invariant summary of an object: sorted out/in hom cardinalities and loops.
using ObjectProfile = std::tuple<std::vector<std::size_t>, std::vector<std::size_t>, std::size_t>;

std::vector<ObjectProfile> object_profiles(const FinCat& c) {
  const std::size_t n = c.object_count();
  std::vector<ObjectProfile> out(n);
  for (ObjectIndex x = 0; x < n; ++x) {
    auto& [outgoing, incoming, loops] = out[x];
    for (ObjectIndex y = 0; y < n; ++y) {
      outgoing.push_back(c.hom(x, y).size());
      incoming.push_back(c.hom(y, x).size());
    }
    std::sort(outgoing.begin(), outgoing.end());
    std::sort(incoming.begin(), incoming.end());
    loops = c.hom(x, x).size();
  }
  return out;
}

// Iso-invariant summary of a morphism. Endomorphisms also record the
// tail and period of their power sequence.
struct MorphismSignature {
  bool identity = false;
  bool endo = false;
  std::size_t tail = 0, period = 0;
  std::size_t left_fixers = 0, right_fixers = 0;
  std::size_t parallel = 0;
  ObjectProfile dom_profile, cod_profile;

  auto key() const {
    return std::tie(identity, endo, tail, period, left_fixers, right_fixers, parallel, dom_profile, cod_profile);
  }
  bool operator==(const MorphismSignature& o) const { return key() == o.key(); }
  bool operator<(const MorphismSignature& o) const { return key() < o.key(); }
};

std::vector<MorphismSignature> morphism_signatures(const FinCat& c, const std::vector<ObjectProfile>& prof) {
  std::vector<MorphismSignature> out(c.morphism_count());
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f) {
    auto& s = out[f];
    const ObjectIndex a = c.dom(f), b = c.cod(f);
    s.identity = c.is_identity(f);
    s.endo = a == b;
    s.parallel = c.hom(a, b).size();
    s.dom_profile = prof[a];
    s.cod_profile = prof[b];
    if (s.endo) {
      std::vector<MorphismIndex> seen{f};
      MorphismIndex p = f;
      for (;;) {
        p = c.compose(f, p);
        auto it = std::find(seen.begin(), seen.end(), p);
        if (it != seen.end()) {
          s.tail = static_cast<std::size_t>(it - seen.begin());
          s.period = seen.size() - s.tail;
          break;
        }
        seen.push_back(p);
      }
    }
    for (MorphismIndex g : c.hom(b, b))
      if (c.compose(g, f) == f) ++s.left_fixers;
    for (MorphismIndex g : c.hom(a, a))
      if (c.compose(f, g) == f) ++s.right_fixers;
  }
  return out;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

class IsoSearch {
 public:
  IsoSearch(const FinCat& c, const FinCat& d, std::uint64_t budget)
      : c_(c), d_(d), budget_(budget), cprof_(object_profiles(c)), dprof_(object_profiles(d)) {
    csig_ = morphism_signatures(c, cprof_);
    dsig_ = morphism_signatures(d, dprof_);
    factorizations_.resize(c.morphism_count());
    for (MorphismIndex g = 0; g < c.morphism_count(); ++g)
      for (MorphismIndex f = 0; f < c.morphism_count(); ++f)
        if (c.composable(g, f)) factorizations_[c.compose(g, f)].emplace_back(g, f);
    for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
      if (!c.is_identity(m)) order_.push_back(m);
  }

  std::optional<std::string> quick_reject() const {
    if (c_.object_count() != d_.object_count())
      return "object counts differ (" + std::to_string(c_.object_count()) + " vs " +
             std::to_string(d_.object_count()) + ")";
    if (c_.morphism_count() != d_.morphism_count())
      return "morphism counts differ (" + std::to_string(c_.morphism_count()) + " vs " +
             std::to_string(d_.morphism_count()) + ")";
    if (sorted(cprof_) != sorted(dprof_)) return "hom-set cardinality profiles differ";
    if (sorted(csig_) != sorted(dsig_)) return "morphism signatures differ";
    return std::nullopt;
  }

  // true: found; false: exhausted search space. Throws Exhausted on budget.
  struct Exhausted {};

  bool run() {
    obj_.assign(c_.object_count(), kUnset);
    obj_used_.assign(d_.object_count(), false);
    mor_.assign(c_.morphism_count(), kNoMorphism);
    mor_used_.assign(d_.morphism_count(), false);
    return assign_object(0);
  }

  std::uint64_t nodes() const { return nodes_; }
  const std::vector<ObjectIndex>& object_map() const { return obj_; }
  const std::vector<MorphismIndex>& morphism_map() const { return mor_; }

 private:
  static constexpr ObjectIndex kUnset = static_cast<ObjectIndex>(-1);

  void tick() {
    if (++nodes_ > budget_) throw Exhausted{};
  }

  bool assign_object(ObjectIndex x) {
    if (x == c_.object_count()) return assign_identities_then_morphisms();
    for (ObjectIndex y = 0; y < d_.object_count(); ++y) {
      if (obj_used_[y] || cprof_[x] != dprof_[y]) continue;
      tick();
      bool ok = c_.hom(x, x).size() == d_.hom(y, y).size();
      for (ObjectIndex z = 0; ok && z < x; ++z)
        ok = c_.hom(x, z).size() == d_.hom(y, obj_[z]).size() && c_.hom(z, x).size() == d_.hom(obj_[z], y).size();
      if (!ok) continue;
      obj_[x] = y;
      obj_used_[y] = true;
      if (assign_object(x + 1)) return true;
      obj_[x] = kUnset;
      obj_used_[y] = false;
    }
    return false;
  }

  bool assign_identities_then_morphisms() {
    for (ObjectIndex x = 0; x < c_.object_count(); ++x) {
      mor_[c_.identity(x)] = d_.identity(obj_[x]);
      mor_used_[d_.identity(obj_[x])] = true;
    }
    if (assign_morphism(0)) return true;
    for (ObjectIndex x = 0; x < c_.object_count(); ++x) {
      mor_[c_.identity(x)] = kNoMorphism;
      mor_used_[d_.identity(obj_[x])] = false;
    }
    return false;
  }

  bool consistent(MorphismIndex m) const {
    auto check = [&](MorphismIndex g, MorphismIndex f) {
      const MorphismIndex gf = c_.compose(g, f);
      if (mor_[g] == kNoMorphism || mor_[f] == kNoMorphism || mor_[gf] == kNoMorphism) return true;
      return mor_[gf] == d_.compose(mor_[g], mor_[f]);
    };
    for (MorphismIndex x = 0; x < c_.morphism_count(); ++x) {
      if (mor_[x] == kNoMorphism) continue;
      if (c_.composable(m, x) && !check(m, x)) return false;
      if (c_.composable(x, m) && !check(x, m)) return false;
    }
    for (auto [g, f] : factorizations_[m])
      if (!check(g, f)) return false;
    return true;
  }

  bool assign_morphism(std::size_t k) {
    if (k == order_.size()) return true;
    const MorphismIndex m = order_[k];
    for (MorphismIndex n : d_.hom(obj_[c_.dom(m)], obj_[c_.cod(m)])) {
      if (mor_used_[n] || !(csig_[m] == dsig_[n])) continue;
      tick();
      mor_[m] = n;
      mor_used_[n] = true;
      if (consistent(m) && assign_morphism(k + 1)) return true;
      mor_[m] = kNoMorphism;
      mor_used_[n] = false;
    }
    return false;
  }

  const FinCat& c_;
  const FinCat& d_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<ObjectProfile> cprof_, dprof_;
  std::vector<MorphismSignature> csig_, dsig_;
  std::vector<std::vector<std::pair<MorphismIndex, MorphismIndex>>> factorizations_;
  std::vector<MorphismIndex> order_;
  std::vector<ObjectIndex> obj_;
  std::vector<bool> obj_used_;
  std::vector<MorphismIndex> mor_;
  std::vector<bool> mor_used_;
};

}  // namespace

IsoResult find_isomorphism(const CatRef& c, const CatRef& d, std::uint64_t budget) {
  IsoSearch search(*c, *d, budget);
  if (auto why = search.quick_reject()) return NotIsomorphic{*why};
  try {
    if (!search.run()) return NotIsomorphic{"no structure-preserving bijection exists"};
  } catch (const IsoSearch::Exhausted&) {
    return BudgetExhausted{search.nodes()};
  }
  const auto& obj = search.object_map();
  const auto& mor = search.morphism_map();
  std::vector<ObjectIndex> inv_obj(obj.size());
  for (ObjectIndex x = 0; x < obj.size(); ++x) inv_obj[obj[x]] = x;
  std::vector<MorphismIndex> inv_mor(mor.size());
  for (MorphismIndex m = 0; m < mor.size(); ++m) inv_mor[mor[m]] = m;
  IsoWitness w{FinFunctor("iso_" + c->name() + "_" + d->name(), c, d, obj, mor),
               FinFunctor("iso_" + d->name() + "_" + c->name(), d, c, std::move(inv_obj), std::move(inv_mor))};
  validate_iso(w);
  return w;
}

}  // namespace basecat
