#include "basecat/fibration.hpp"

#include <memory>
#include <set>
#include <stdexcept>

namespace basecat {

namespace {

// Counts scan steps; one step per (g, w) pair examined.
class Steps {
 public:
  Steps(std::uint64_t limit, const char* op) : left_(limit), op_(op) {}
  void tick() {
    if (left_ == 0) throw ValidationError(ErrorKind::BudgetExhausted, {op_}, "fibration scan budget exhausted");
    --left_;
  }

 private:
  std::uint64_t left_;
  const char* op_;
};

LiftCheck cartesian_impl(const FunctorOver& p, MorphismIndex f, Steps& steps) {
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  const MorphismIndex u = p.proj.map_morphism(f);
  const ObjectIndex pdom_f = p.proj.map_object(e.dom(f));
  for (MorphismIndex g = 0; g < e.morphism_count(); ++g) {
    if (e.cod(g) != e.cod(f)) continue;
    const MorphismIndex pg = p.proj.map_morphism(g);
    for (MorphismIndex w : b.hom(p.proj.map_object(e.dom(g)), pdom_f)) {
      steps.tick();
      if (b.compose(u, w) != pg) continue;
      std::size_t n = 0;
      for (MorphismIndex h : e.hom(e.dom(g), e.dom(f)))
        if (p.proj.map_morphism(h) == w && e.compose(f, h) == g) ++n;
      if (n != 1) return LiftCounterexample{LiftKind::Cartesian, f, g, w, n};
    }
  }
  return Holds{};
}

LiftCheck opcartesian_impl(const FunctorOver& p, MorphismIndex f, Steps& steps) {
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  const MorphismIndex u = p.proj.map_morphism(f);
  const ObjectIndex pcod_f = p.proj.map_object(e.cod(f));
  for (MorphismIndex g = 0; g < e.morphism_count(); ++g) {
    if (e.dom(g) != e.dom(f)) continue;
    const MorphismIndex pg = p.proj.map_morphism(g);
    for (MorphismIndex w : b.hom(pcod_f, p.proj.map_object(e.cod(g)))) {
      steps.tick();
      if (b.compose(w, u) != pg) continue;
      std::size_t n = 0;
      for (MorphismIndex h : e.hom(e.cod(f), e.cod(g)))
        if (p.proj.map_morphism(h) == w && e.compose(h, f) == g) ++n;
      if (n != 1) return LiftCounterexample{LiftKind::OpCartesian, f, g, w, n};
    }
  }
  return Holds{};
}

LiftCheck lift_impl(const FunctorOver& p, MorphismIndex f, LiftKind kind, Steps& steps) {
  return kind == LiftKind::Cartesian ? cartesian_impl(p, f, steps) : opcartesian_impl(p, f, steps);
}

bool holds(const LiftCheck& r) { return std::holds_alternative<Holds>(r); }

// The end of a lift that must sit at Y: cod for cartesian, dom for opcartesian.
ObjectIndex anchor(const FinCat& e, MorphismIndex m, LiftKind kind) {
  return kind == LiftKind::Cartesian ? e.cod(m) : e.dom(m);
}
ObjectIndex anchor_base(const FinCat& b, MorphismIndex u, LiftKind kind) {
  return kind == LiftKind::Cartesian ? b.cod(u) : b.dom(u);
}

FibrationCheck find_cleavage(const FunctorOver& p, LiftKind kind, std::uint64_t budget) {
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  Steps steps(budget, kind == LiftKind::Cartesian ? "check_fibration" : "check_opfibration");
  Cleavage c{kind, e.object_count(), std::vector<MorphismIndex>(b.morphism_count() * e.object_count(), kNoMorphism)};
  std::vector<int> known(e.morphism_count(), -1);  // -1 unknown, 0 no, 1 yes
  // candidates[u * |E| + Y] in morphism order
  std::vector<std::vector<MorphismIndex>> candidates(c.lift.size());
  for (MorphismIndex m = 0; m < e.morphism_count(); ++m)
    candidates[p.proj.map_morphism(m) * e.object_count() + anchor(e, m, kind)].push_back(m);
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u)
    for (ObjectIndex y = 0; y < e.object_count(); ++y) {
      if (p.proj.map_object(y) != anchor_base(b, u, kind)) continue;
      for (MorphismIndex m : candidates[u * e.object_count() + y]) {
        if (known[m] < 0) known[m] = holds(lift_impl(p, m, kind, steps)) ? 1 : 0;
        if (known[m] == 1) {
          c.at(u, y) = m;
          break;
        }
      }
      if (c.at(u, y) == kNoMorphism) return MissingLift{kind, u, y};
    }
  return c;
}

std::vector<bool> cartesian_set(const FunctorOver& p, Steps& steps) {
  std::vector<bool> cart(p.total().morphism_count());
  for (MorphismIndex m = 0; m < cart.size(); ++m) cart[m] = holds(cartesian_impl(p, m, steps));
  return cart;
}

// Second label components, when present and distinct within `members`.
template <class Get>
std::vector<std::string> fibre_ids(const std::vector<std::size_t>& members, const std::vector<PairLabel>& labels,
                                   std::size_t total, Get total_id) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  bool usable = labels.size() == total;
  for (std::size_t m : members) {
    if (!usable) break;
    if (!seen.insert(labels[m].second).second) usable = false;
    ids.push_back(labels[m].second);
  }
  if (usable) return ids;
  ids.clear();
  for (std::size_t m : members) ids.push_back(total_id(m));
  return ids;
}

}  // namespace

FunctorOver FunctorOver::from(const ConstructedCategory& c) {
  return {c.projection, c.object_labels, c.morphism_labels};
}

LiftCheck is_cartesian(const FunctorOver& p, MorphismIndex f, std::uint64_t budget) {
  Steps steps(budget, "is_cartesian");
  return cartesian_impl(p, f, steps);
}

LiftCheck is_opcartesian(const FunctorOver& p, MorphismIndex f, std::uint64_t budget) {
  Steps steps(budget, "is_opcartesian");
  return opcartesian_impl(p, f, steps);
}

LiftCheck is_cartesian(const FunctorOver& p, std::string_view f, std::uint64_t budget) {
  return is_cartesian(p, p.total().morphism_index(f), budget);
}

LiftCheck is_opcartesian(const FunctorOver& p, std::string_view f, std::uint64_t budget) {
  return is_opcartesian(p, p.total().morphism_index(f), budget);
}

FibrationCheck check_fibration(const FunctorOver& p, std::uint64_t budget) {
  return find_cleavage(p, LiftKind::Cartesian, budget);
}

FibrationCheck check_opfibration(const FunctorOver& p, std::uint64_t budget) {
  return find_cleavage(p, LiftKind::OpCartesian, budget);
}

Cleavage canonical_cleavage(const ConstructedCategory& cc, LiftKind kind) {
  if (cc.cleavage && cc.cleavage->kind == kind) return *cc.cleavage;
  const FinCat& e = *cc.cat;
  const FinCat& b = cc.base();
  Cleavage c{kind, e.object_count(), std::vector<MorphismIndex>(b.morphism_count() * e.object_count(), kNoMorphism)};
  for (MorphismIndex m = 0; m < e.morphism_count(); ++m) {
    MorphismIndex& slot = c.at(cc.projection.map_morphism(m), anchor(e, m, kind));
    if (slot != kNoMorphism)
      throw ValidationError(ErrorKind::NoLiftInCleavage,
                            {b.morphism_id(cc.projection.map_morphism(m)), e.object_id(anchor(e, m, kind))},
                            "several lifts and no canonical choice in " + e.name());
    slot = m;
  }
  return c;
}

std::variant<Holds, CleavageDefect> validate_cleavage(const FunctorOver& p, const Cleavage& c, std::uint64_t budget) {
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  if (c.total_objects != e.object_count() || c.lift.size() != b.morphism_count() * e.object_count())
    throw std::invalid_argument("validate_cleavage: cleavage shaped for another functor");
  Steps steps(budget, "validate_cleavage");
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u)
    for (ObjectIndex y = 0; y < e.object_count(); ++y) {
      if (p.proj.map_object(y) != anchor_base(b, u, c.kind)) continue;
      const MorphismIndex m = c.at(u, y);
      if (m == kNoMorphism) return CleavageDefect{u, y, "no entry"};
      if (p.proj.map_morphism(m) != u) return CleavageDefect{u, y, e.morphism_id(m) + " does not lie over u"};
      if (anchor(e, m, c.kind) != y) return CleavageDefect{u, y, e.morphism_id(m) + " is not anchored at Y"};
      if (!holds(lift_impl(p, m, c.kind, steps)))
        return CleavageDefect{u, y,
                              e.morphism_id(m) + (c.kind == LiftKind::Cartesian ? " is not cartesian"
                                                                                : " is not opcartesian")};
    }
  return Holds{};
}

std::variant<Holds, SplitViolation> check_split(const FunctorOver& p, const Cleavage& c) {
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  for (ObjectIndex y = 0; y < e.object_count(); ++y) {
    const MorphismIndex id = b.identity(p.proj.map_object(y));
    if (c.at(id, y) != e.identity(y)) return SplitViolation{true, id, id, y};
  }
  for (MorphismIndex v = 0; v < b.morphism_count(); ++v)
    for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
      if (!b.composable(v, u)) continue;
      const MorphismIndex vu = b.compose(v, u);
      if (c.kind == LiftKind::Cartesian) {
        for (ObjectIndex z = 0; z < e.object_count(); ++z) {
          if (p.proj.map_object(z) != b.cod(v)) continue;
          const MorphismIndex a = c.at(v, z);
          const MorphismIndex whole = c.at(vu, z);
          if (a == kNoMorphism || whole == kNoMorphism) return SplitViolation{false, v, u, z};
          const MorphismIndex first = c.at(u, e.dom(a));
          if (first == kNoMorphism || e.compose(a, first) != whole) return SplitViolation{false, v, u, z};
        }
      } else {
        for (ObjectIndex x = 0; x < e.object_count(); ++x) {
          if (p.proj.map_object(x) != b.dom(u)) continue;
          const MorphismIndex a = c.at(u, x);
          const MorphismIndex whole = c.at(vu, x);
          if (a == kNoMorphism || whole == kNoMorphism) return SplitViolation{false, v, u, x};
          const MorphismIndex second = c.at(v, e.cod(a));
          if (second == kNoMorphism || e.compose(second, a) != whole) return SplitViolation{false, v, u, x};
        }
      }
    }
  return Holds{};
}

Factorization factor_vertical_cartesian(const FunctorOver& p, const Cleavage& c, MorphismIndex g) {
  if (c.kind != LiftKind::Cartesian) throw std::invalid_argument("factor_vertical_cartesian needs a cleavage");
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  const MorphismIndex u = p.proj.map_morphism(g);
  const MorphismIndex f = c.at(u, e.cod(g));
  if (f == kNoMorphism)
    throw ValidationError(ErrorKind::NoLiftInCleavage, {b.morphism_id(u), e.object_id(e.cod(g))});
  const MorphismIndex id = b.identity(p.proj.map_object(e.dom(g)));
  MorphismIndex found = kNoMorphism;
  std::size_t n = 0;
  for (MorphismIndex h : e.hom(e.dom(g), e.dom(f)))
    if (p.proj.map_morphism(h) == id && e.compose(f, h) == g) {
      found = h;
      ++n;
    }
  if (n != 1)
    throw ValidationError(ErrorKind::NotCartesian, {e.morphism_id(f), e.morphism_id(g)},
                          std::to_string(n) + " vertical factors");
  return {found, f};
}

std::variant<Holds, PropertyCounterexample> property_cartesian_compose(const FunctorOver& p, std::uint64_t budget) {
  const FinCat& e = p.total();
  Steps steps(budget, "property_cartesian_compose");
  const auto cart = cartesian_set(p, steps);
  for (MorphismIndex g = 0; g < e.morphism_count(); ++g)
    for (MorphismIndex f = 0; f < e.morphism_count(); ++f)
      if (cart[g] && cart[f] && e.composable(g, f) && !cart[e.compose(g, f)]) return PropertyCounterexample{g, f};
  return Holds{};
}

std::variant<Holds, PropertyCounterexample> property_cartesian_over_iso(const FunctorOver& p, std::uint64_t budget) {
  const FinCat& e = p.total();
  Steps steps(budget, "property_cartesian_over_iso");
  const auto cart = cartesian_set(p, steps);
  for (MorphismIndex f = 0; f < e.morphism_count(); ++f)
    if (cart[f] && p.base().inverse(p.proj.map_morphism(f)) && !e.inverse(f))
      return PropertyCounterexample{kNoMorphism, f};
  return Holds{};
}

IndexedFamily recover_indexed(const FunctorOver& p, const Cleavage& c) {
  if (c.kind != LiftKind::Cartesian) throw std::invalid_argument("recover_indexed needs a cleavage");
  const FinCat& e = p.total();
  const FinCat& b = p.base();
  if (auto bad = check_split(p, c); auto* v = std::get_if<SplitViolation>(&bad))
    throw ValidationError(ErrorKind::NotSplit, {b.morphism_id(v->v), b.morphism_id(v->u)}, describe(p, *v));

  // Fibre I: objects over I, morphisms over id_I. local_* map total indices into fibres.
  std::vector<CatRef> fibre(b.object_count());
  std::vector<std::size_t> local_obj(e.object_count()), local_mor(e.morphism_count(), kNoMorphism);
  for (ObjectIndex i = 0; i < b.object_count(); ++i) {
    std::vector<std::size_t> objs, mors;
    for (ObjectIndex x = 0; x < e.object_count(); ++x)
      if (p.proj.map_object(x) == i) objs.push_back(x);
    for (MorphismIndex m = 0; m < e.morphism_count(); ++m)
      if (p.proj.map_morphism(m) == b.identity(i)) mors.push_back(m);
    const auto oid = fibre_ids(objs, p.object_labels, e.object_count(), [&](std::size_t x) { return e.object_id(x); });
    const auto mid =
        fibre_ids(mors, p.morphism_labels, e.morphism_count(), [&](std::size_t m) { return e.morphism_id(m); });
    FinCat::Builder builder(e.name() + "_over_" + b.object_id(i));
    for (std::size_t k = 0; k < objs.size(); ++k) local_obj[objs[k]] = builder.add_object(oid[k]);
    for (std::size_t k = 0; k < mors.size(); ++k)
      local_mor[mors[k]] = builder.add_morphism(mid[k], local_obj[e.dom(mors[k])], local_obj[e.cod(mors[k])]);
    for (ObjectIndex x : objs) builder.set_identity(local_obj[x], local_mor[e.identity(x)]);
    for (MorphismIndex g : mors)
      for (MorphismIndex f : mors)
        if (e.composable(g, f)) builder.set_compose(local_mor[g], local_mor[f], local_mor[e.compose(g, f)]);
    fibre[i] = std::make_shared<const FinCat>(std::move(builder).build());
  }

  std::vector<FinFunctor> pull;
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
    const ObjectIndex j = b.cod(u), i = b.dom(u);
    const MorphismIndex id_i = b.identity(i);
    std::vector<ObjectIndex> omap(fibre[j]->object_count());
    std::vector<MorphismIndex> mmap(fibre[j]->morphism_count());
    for (ObjectIndex y = 0; y < e.object_count(); ++y)
      if (p.proj.map_object(y) == j) omap[local_obj[y]] = local_obj[e.dom(c.at(u, y))];
    for (MorphismIndex psi = 0; psi < e.morphism_count(); ++psi) {
      if (p.proj.map_morphism(psi) != b.identity(j)) continue;
      const MorphismIndex lift_dom = c.at(u, e.dom(psi)), lift_cod = c.at(u, e.cod(psi));
      const MorphismIndex target = e.compose(psi, lift_dom);
      MorphismIndex found = kNoMorphism;
      for (MorphismIndex h : e.hom(e.dom(lift_dom), e.dom(lift_cod)))
        if (p.proj.map_morphism(h) == id_i && e.compose(lift_cod, h) == target) {
          found = h;
          break;
        }
      if (found == kNoMorphism)
        throw ValidationError(ErrorKind::NotCartesian, {e.morphism_id(lift_cod), e.morphism_id(target)},
                              "no vertical factor while pulling back " + e.morphism_id(psi));
      mmap[local_mor[psi]] = local_mor[found];
    }
    pull.emplace_back("pull_" + b.morphism_id(u), fibre[j], fibre[i], std::move(omap), std::move(mmap));
  }
  IndexedFamily fam{"recovered_" + e.name(), p.proj.target_ref(), std::move(fibre), std::move(pull)};
  check_strict(fam);
  return fam;
}

std::string describe(const FunctorOver& p, const LiftCounterexample& c) {
  const FinCat& e = p.total();
  return std::string(c.kind == LiftKind::Cartesian ? "not cartesian: " : "not opcartesian: ") + e.morphism_id(c.f) +
         " with g=" + e.morphism_id(c.g) + " w=" + p.base().morphism_id(c.w) + " has " +
         std::to_string(c.candidates) + " mediating h";
}

std::string describe(const FunctorOver& p, const MissingLift& m) {
  return std::string(m.kind == LiftKind::Cartesian ? "MissingLift(" : "MissingOpLift(") +
         p.base().morphism_id(m.u) + "," + p.total().object_id(m.y) + ")";
}

std::string describe(const FunctorOver& p, const SplitViolation& s) {
  return "SplitViolation(" + p.base().morphism_id(s.v) + "," + p.base().morphism_id(s.u) + ") " +
         (s.identity_law ? "identity law" : "composition law") + " at " + p.total().object_id(s.at);
}

std::string describe(const FunctorOver& p, const PropertyCounterexample& c) {
  const FinCat& e = p.total();
  if (c.g == kNoMorphism) return "cartesian " + e.morphism_id(c.f) + " over an isomorphism is not invertible";
  return "composite " + e.morphism_id(c.g) + " . " + e.morphism_id(c.f) + " of cartesian morphisms is not cartesian";
}

}  // namespace basecat
