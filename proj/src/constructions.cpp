#include "basecat/constructions.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>

namespace basecat {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Def1: return "Def1";
    case Provenance::Def2: return "Def2";
    case Provenance::Def3: return "Def3";
    case Provenance::Def4: return "Def4";
    case Provenance::Def5: return "Def5";
    case Provenance::Def6: return "Def6";
    case Provenance::Def7: return "Def7";
    case Provenance::Def8: return "Def8";
    case Provenance::Grothendieck: return "Grothendieck";
    case Provenance::TransGroupoid: return "TransGroupoid";
  }
  return "?";
}

std::string PairLabel::render() const {
  std::string out = "(" + first + "," + second;
  if (extra) out += "," + *extra;
  return out + ")";
}

namespace {

using ComposeFn = std::function<MorphismIndex(MorphismIndex g, MorphismIndex f)>;

// Collects a construction by index and hands it to the category builder, so
// the recipe's composition is checked against every law.
class Assembly {
 public:
  Assembly(std::string name, CatRef base) : name_(std::move(name)), base_(std::move(base)) {}

  ObjectIndex object(PairLabel label, ObjectIndex over, std::string id = {}) {
    if (id.empty()) id = label.render();
    object_ids_.push_back(std::move(id));
    object_labels_.push_back(std::move(label));
    object_over_.push_back(over);
    identity_.push_back(kNoMorphism);
    return object_ids_.size() - 1;
  }

  /// `label.extra` is kept only when the short form collides.
  MorphismIndex morphism(PairLabel label, ObjectIndex dom, ObjectIndex cod, MorphismIndex over) {
    morphisms_.push_back({{}, dom, cod});
    morphism_labels_.push_back(std::move(label));
    morphism_over_.push_back(over);
    return morphisms_.size() - 1;
  }

  void identity(ObjectIndex x, MorphismIndex m) { identity_.at(x) = m; }

  ConstructedCategory finish(Provenance provenance, const ComposeFn& compose, std::optional<Cleavage> cleavage = {}) {
    std::map<std::string, std::size_t> uses;
    for (auto& l : morphism_labels_) ++uses[PairLabel{l.first, l.second, {}}.render()];
    for (auto& l : morphism_labels_) {
      if (uses[PairLabel{l.first, l.second, {}}.render()] == 1) {
        l.extra.reset();
      } else if (!l.extra) {
        throw std::logic_error("Assembly: colliding label without a long form in " + name_);
      }
    }

    FinCat::Builder b(name_);
    for (auto& id : object_ids_) b.add_object(id);
    for (MorphismIndex m = 0; m < morphisms_.size(); ++m)
      b.add_morphism(morphism_labels_[m].render(), morphisms_[m].dom, morphisms_[m].cod);
    for (ObjectIndex x = 0; x < identity_.size(); ++x) b.set_identity(x, identity_[x]);
    for (MorphismIndex g = 0; g < morphisms_.size(); ++g)
      for (MorphismIndex f = 0; f < morphisms_.size(); ++f)
        if (morphisms_[f].cod == morphisms_[g].dom) b.set_compose(g, f, compose(g, f));
    auto cat = std::make_shared<const FinCat>(std::move(b).build());
    FinFunctor projection("P_" + name_, cat, base_, object_over_, morphism_over_);
    return {cat, std::move(projection), provenance, std::move(object_labels_), std::move(morphism_labels_),
            std::move(cleavage)};
  }

 private:
  std::string name_;
  CatRef base_;
  std::vector<std::string> object_ids_;
  std::vector<PairLabel> object_labels_;
  std::vector<ObjectIndex> object_over_;
  std::vector<MorphismIndex> identity_;
  std::vector<Morphism> morphisms_;
  std::vector<PairLabel> morphism_labels_;
  std::vector<MorphismIndex> morphism_over_;
};

CatRef share(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

// One constructed morphism per base morphism and one object per base object;
// composition is the base's. `second` labels each morphism.
ConstructedCategory bijective_over(std::string name, const CatRef& base, Provenance p,
                                   const std::function<std::string(ObjectIndex)>& object_second,
                                   const std::function<std::string(MorphismIndex)>& morphism_second) {
  const FinCat& c = *base;
  Assembly a(std::move(name), base);
  for (ObjectIndex x = 0; x < c.object_count(); ++x) a.object({c.object_id(x), object_second(x)}, x);
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
    a.morphism({c.morphism_id(m), morphism_second(m)}, c.dom(m), c.cod(m), m);
  for (ObjectIndex x = 0; x < c.object_count(); ++x) a.identity(x, c.identity(x));
  return a.finish(p, [&](MorphismIndex g, MorphismIndex f) { return c.compose(g, f); });
}

// Element-indexed concrete recipes share this layout: morphism (m, e) for each
// base morphism m and each element e of the carrier at one chosen end of m.
struct ElementIndex {
  std::vector<std::size_t> offset;  // per base morphism
  MorphismIndex at(MorphismIndex m, std::size_t e) const { return offset[m] + e; }
};

std::vector<std::size_t> object_offsets(const std::vector<const FinSetObj*>& carriers) {
  std::vector<std::size_t> off(carriers.size() + 1, 0);
  for (std::size_t x = 0; x < carriers.size(); ++x) off[x + 1] = off[x] + carriers[x]->size();
  return off;
}

void require_over(const FinFunctor& f, const ConcreteStructure& u) {
  if (&u.over() != &f.target() && !(u.over().name() == f.target().name() && same_presentation(u.over(), f.target())))
    throw ValidationError(ErrorKind::SourceTargetMismatch, {u.name(), f.name()},
                          "concrete structure is not over the target of the functor");
}

bool same_category(const FinCat& a, const FinCat& b) {
  return &a == &b || (a.name() == b.name() && same_presentation(a, b));
}

}  // namespace

ConstructedCategory opposite(const ConstructedCategory& c) {
  auto cat = share(opposite(*c.cat));
  auto base = share(opposite(c.base()));
  FinFunctor projection(c.projection.name() + std::string(kOpTag), cat, base, c.projection.object_map(),
                        c.projection.morphism_map());
  return {cat, std::move(projection), c.provenance, c.object_labels, c.morphism_labels, std::nullopt};
}

// ---------------------------------------------------------------------------

IndexedFamily make_indexed(std::string name, CatRef base, const std::vector<std::pair<std::string, CatRef>>& fibres,
                           const std::vector<std::pair<std::string, FinFunctor>>& pulls) {
  const FinCat& b = *base;
  std::vector<CatRef> fibre(b.object_count());
  for (const auto& [obj, cat] : fibres) {
    const ObjectIndex i = b.object_index(obj);
    if (fibre[i]) throw ValidationError(ErrorKind::DuplicateId, {obj}, "fibre given twice in " + name);
    fibre[i] = cat;
  }
  for (ObjectIndex i = 0; i < b.object_count(); ++i)
    if (!fibre[i]) throw ValidationError(ErrorKind::UnmappedObject, {b.object_id(i)}, "no fibre in " + name);

  std::vector<std::optional<FinFunctor>> pull(b.morphism_count());
  for (const auto& [mor, fn] : pulls) {
    const MorphismIndex u = b.morphism_index(mor);
    if (pull[u]) throw ValidationError(ErrorKind::DuplicateId, {mor}, "pull given twice in " + name);
    const CatRef& from = fibre[b.cod(u)];
    const CatRef& to = fibre[b.dom(u)];
    if (!same_category(fn.source(), *from))
      throw ValidationError(ErrorKind::SourceTargetMismatch, {fn.name(), from->name()}, "pull " + mor + " source");
    if (!same_category(fn.target(), *to))
      throw ValidationError(ErrorKind::SourceTargetMismatch, {fn.name(), to->name()}, "pull " + mor + " target");
    // Re-seat on the fibre references so later composition sees one category.
    pull[u] = FinFunctor(fn.name(), from, to, fn.object_map(), fn.morphism_map());
  }
  IndexedFamily fam{std::move(name), std::move(base), std::move(fibre), {}};
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
    if (!pull[u]) {
      if (!b.is_identity(u))
        throw ValidationError(ErrorKind::UnmappedMorphism, {b.morphism_id(u)}, "no pull in " + fam.name);
      pull[u] = FinFunctor::identity(fam.fibre[b.dom(u)], "id_" + fam.fibre[b.dom(u)]->name());
    }
    fam.pull.push_back(std::move(*pull[u]));
  }
  check_strict(fam);
  return fam;
}

void check_strict(const IndexedFamily& fam) {
  const FinCat& b = *fam.base;
  for (ObjectIndex i = 0; i < b.object_count(); ++i) {
    const MorphismIndex id = b.identity(i);
    if (!fam.pull[id].is_identity())
      throw ValidationError(ErrorKind::NotStrict, {b.morphism_id(id), b.morphism_id(id)},
                            "pull of an identity must be the identity functor");
  }
  for (MorphismIndex v = 0; v < b.morphism_count(); ++v)
    for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
      if (!b.composable(v, u)) continue;
      const FinFunctor& whole = fam.pull[b.compose(v, u)];
      const FinFunctor& pu = fam.pull[u];
      const FinFunctor& pv = fam.pull[v];
      bool ok = true;
      for (ObjectIndex y = 0; y < pv.source().object_count() && ok; ++y)
        ok = whole.map_object(y) == pu.map_object(pv.map_object(y));
      for (MorphismIndex m = 0; m < pv.source().morphism_count() && ok; ++m)
        ok = whole.map_morphism(m) == pu.map_morphism(pv.map_morphism(m));
      if (!ok)
        throw ValidationError(ErrorKind::NotStrict, {b.morphism_id(v), b.morphism_id(u)},
                              "pull(v . u) differs from pull(u) . pull(v)");
    }
}

GroupAction validate_action(const RawAction& raw, CatRef group) {
  const FinCat& g = *group;
  if (!raw.group.empty() && raw.group != g.name())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {raw.group, g.name()}, "action " + raw.name);
  if (g.object_count() != 1)
    throw ValidationError(ErrorKind::NotAGroup, {g.name()}, "a group needs exactly one object");
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m)
    if (!g.inverse(m)) throw ValidationError(ErrorKind::NotAGroup, {g.morphism_id(m)}, "not invertible");
  FinSetObj carrier = make_finset("X", raw.set);

  std::vector<std::optional<FinFn>> phi(g.morphism_count());
  for (const auto& [mor, pairs] : raw.phi) {
    const MorphismIndex m = g.morphism_index(mor);
    if (phi[m]) throw ValidationError(ErrorKind::DuplicateId, {mor}, "phi given twice");
    phi[m] = make_fn(carrier, carrier, pairs, mor);
  }
  std::vector<FinFn> fns;
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    if (!phi[m]) {
      if (!g.is_identity(m)) throw ValidationError(ErrorKind::UnmappedMorphism, {g.morphism_id(m)}, "no phi");
      phi[m] = identity_fn(carrier);
    }
    fns.push_back(std::move(*phi[m]));
  }
  // Functoriality only: distinct group elements may act alike.
  auto checked = make_concrete(raw.name, group, {carrier}, fns, {true, nullptr});
  return {raw.name, std::move(group), std::move(carrier), checked.actions()};
}

RawAction to_raw(const GroupAction& act) {
  RawAction raw{act.name, act.group->name(), act.carrier.elements, {}};
  for (MorphismIndex m = 0; m < act.group->morphism_count(); ++m) {
    if (act.group->is_identity(m)) continue;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < act.carrier.size(); ++i)
      pairs.emplace_back(act.carrier.elements[i], act.carrier.elements[act.phi[m].map[i]]);
    raw.phi.emplace_back(act.group->morphism_id(m), std::move(pairs));
  }
  return raw;
}

// ---------------------------------------------------------------------------

ConstructedCategory graph_category(const FinFunctor& f) {
  const FinCat& d = f.target();
  return bijective_over(
      "graph_" + f.name(), f.source_ref(), Provenance::Def1,
      [&](ObjectIndex x) { return d.object_id(f.map_object(x)); },
      [&](MorphismIndex m) { return d.morphism_id(f.map_morphism(m)); });
}

ConstructedCategory abstract_left_action(const FinFunctor& f) {
  const FinCat& c = f.source();
  const FinCat& d = f.target();
  return bijective_over(
      "left_" + f.name(), f.source_ref(), Provenance::Def5,
      [&](ObjectIndex x) { return d.object_id(f.map_object(x)); },
      [&](MorphismIndex m) { return d.morphism_id(d.identity(f.map_object(c.cod(m)))); });
}

ConstructedCategory abstract_right_action(const FinFunctor& f) {
  const FinCat& d = f.target();
  auto op = share(opposite(f.source()));
  // f_op : Y -> X in C^op carries id_FY, Y being its domain there.
  return bijective_over(
      "right_" + f.name(), op, Provenance::Def3, [&](ObjectIndex x) { return d.object_id(f.map_object(x)); },
      [&](MorphismIndex m) { return d.morphism_id(d.identity(f.map_object(op->dom(m)))); });
}

namespace {

enum class ConcreteRecipe { Graph, Left, Right };

// Defs 2, 6 and 4: morphisms indexed by (f, x) with x in U(F dom f).
ConstructedCategory concrete_over(const FinFunctor& f, const ConcreteStructure& u, ConcreteRecipe recipe) {
  require_over(f, u);
  const FinCat& c = f.source();
  std::vector<const FinSetObj*> carrier;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) carrier.push_back(&u.carrier(f.map_object(x)));
  auto action = [&](MorphismIndex m) -> const FinFn& { return u.action(f.map_morphism(m)); };

  const bool right = recipe == ConcreteRecipe::Right;
  CatRef base = right ? share(opposite(c)) : f.source_ref();
  const std::string prefix = recipe == ConcreteRecipe::Graph ? "cgraph_" : right ? "cright_" : "cleft_";
  const Provenance prov =
      recipe == ConcreteRecipe::Graph ? Provenance::Def2 : right ? Provenance::Def4 : Provenance::Def6;

  Assembly a(prefix + f.name() + "_" + u.name(), base);
  const auto off = object_offsets(carrier);
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (const auto& e : carrier[x]->elements) a.object({c.object_id(x), e}, x);

  ElementIndex idx{std::vector<std::size_t>(c.morphism_count())};
  for (MorphismIndex m = 0, next = 0; m < c.morphism_count(); ++m) {
    idx.offset[m] = next;
    const FinFn& fn = action(m);
    for (std::size_t x = 0; x < fn.dom.size(); ++x, ++next) {
      const ObjectIndex src = off[c.dom(m)] + x;
      const ObjectIndex tgt = off[c.cod(m)] + fn(x);
      const std::string& xe = fn.dom.elements[x];
      const std::string& ye = fn.cod.elements[fn(x)];
      switch (recipe) {
        case ConcreteRecipe::Graph: a.morphism({c.morphism_id(m), xe}, src, tgt, m); break;
        case ConcreteRecipe::Left: a.morphism({c.morphism_id(m), ye, xe}, src, tgt, m); break;
        case ConcreteRecipe::Right: a.morphism({base->morphism_id(m), ye, xe}, tgt, src, m); break;
      }
    }
  }
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (std::size_t e = 0; e < carrier[x]->size(); ++e) a.identity(off[x] + e, idx.at(c.identity(x), e));

  // Decode a constructed morphism to (base morphism, element at its C-domain).
  std::vector<std::pair<MorphismIndex, std::size_t>> decode;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
    for (std::size_t x = 0; x < carrier[c.dom(m)]->size(); ++x) decode.emplace_back(m, x);

  return a.finish(prov, [&](MorphismIndex g, MorphismIndex h) {
    auto [mg, xg] = decode[g];
    auto [mh, xh] = decode[h];
    // In Def4 the later morphism sits first in C: (g_op . h_op) = (h . g)_op.
    if (right) return idx.at(c.compose(mh, mg), xg);
    return idx.at(c.compose(mg, mh), xh);
  });
}

}  // namespace

ConstructedCategory concrete_graph_category(const FinFunctor& f, const ConcreteStructure& u) {
  return concrete_over(f, u, ConcreteRecipe::Graph);
}
ConstructedCategory concrete_left_action(const FinFunctor& f, const ConcreteStructure& u) {
  return concrete_over(f, u, ConcreteRecipe::Left);
}
ConstructedCategory concrete_right_action(const FinFunctor& f, const ConcreteStructure& u) {
  return concrete_over(f, u, ConcreteRecipe::Right);
}

ConstructedCategory right_action_selfdual(const FinFunctor& f, const IsoWitness& w, const ConcreteStructure* u) {
  const FinCat& c = f.source();
  try {
    if (!same_presentation(w.forward.source(), c) || !same_presentation(w.forward.target(), opposite(c)))
      throw ValidationError(ErrorKind::SourceTargetMismatch, {w.forward.name(), c.name()});
    validate_iso(w);
  } catch (const ValidationError& e) {
    throw ValidationError(ErrorKind::NoSelfDualWitness, {c.name()}, e.what());
  }
  const FinFunctor& back = w.backward;  // C^op -> C, same indices as C
  const FinCat& d = f.target();
  auto fbar_object = [&](ObjectIndex x) { return f.map_object(back.map_object(x)); };
  auto fbar_morphism = [&](MorphismIndex m) { return f.map_morphism(back.map_morphism(m)); };

  if (!u) {
    return bijective_over(
        "selfdual_" + f.name(), f.source_ref(), Provenance::Def7,
        [&](ObjectIndex x) { return d.object_id(fbar_object(x)); },
        [&](MorphismIndex m) { return d.morphism_id(d.identity(fbar_object(c.dom(m)))); });
  }

  require_over(f, *u);
  std::vector<const FinSetObj*> carrier;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) carrier.push_back(&u->carrier(fbar_object(x)));
  Assembly a("cselfdual_" + f.name() + "_" + u->name(), f.source_ref());
  const auto off = object_offsets(carrier);
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (const auto& e : carrier[x]->elements) a.object({c.object_id(x), e}, x);

  // Morphism (f, y) for y over cod f; x = U(Fbar f_op)(y) is its domain element.
  ElementIndex idx{std::vector<std::size_t>(c.morphism_count())};
  for (MorphismIndex m = 0, next = 0; m < c.morphism_count(); ++m) {
    idx.offset[m] = next;
    const FinFn& fn = u->action(fbar_morphism(m));
    if (!(fn.dom == *carrier[c.cod(m)]) || !(fn.cod == *carrier[c.dom(m)]))
      throw std::logic_error("right_action_selfdual: Fbar is not contravariant on " + c.morphism_id(m));
    for (std::size_t y = 0; y < fn.dom.size(); ++y, ++next)
      a.morphism({c.morphism_id(m), fn.cod.elements[fn(y)], fn.dom.elements[y]}, off[c.dom(m)] + fn(y),
                 off[c.cod(m)] + y, m);
  }
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (std::size_t e = 0; e < carrier[x]->size(); ++e) a.identity(off[x] + e, idx.at(c.identity(x), e));
  std::vector<std::pair<MorphismIndex, std::size_t>> decode;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
    for (std::size_t y = 0; y < carrier[c.cod(m)]->size(); ++y) decode.emplace_back(m, y);
  return a.finish(Provenance::Def8, [&](MorphismIndex g, MorphismIndex h) {
    return idx.at(c.compose(decode[g].first, decode[h].first), decode[g].second);
  });
}

// ---------------------------------------------------------------------------

TrivialCategorification trivial_categorify(const CatRef& d) {
  TrivialCategorification out;
  for (ObjectIndex x = 0; x < d->object_count(); ++x) {
    FinCat::Builder b("I(" + d->object_id(x) + ")");
    b.add_object(d->object_id(x));
    b.set_identity(0, b.add_morphism(d->morphism_id(d->identity(x)), 0, 0));
    out.fibre.push_back(share(std::move(b).build()));
  }
  for (MorphismIndex m = 0; m < d->morphism_count(); ++m)
    out.functor.emplace_back("I(" + d->morphism_id(m) + ")", out.fibre[d->dom(m)], out.fibre[d->cod(m)],
                             std::vector<ObjectIndex>{0}, std::vector<MorphismIndex>{0});
  return out;
}

IndexedFamily trivial_family(const FinFunctor& f) {
  const FinCat& c = f.source();
  auto tc = trivial_categorify(f.target_ref());
  auto base = share(opposite(c));
  std::vector<std::pair<std::string, CatRef>> fibres;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) fibres.emplace_back(c.object_id(x), tc.fibre[f.map_object(x)]);
  std::vector<std::pair<std::string, FinFunctor>> pulls;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
    if (!c.is_identity(m)) pulls.emplace_back(base->morphism_id(m), tc.functor[f.map_morphism(m)]);
  return make_indexed("triv_" + f.name(), base, fibres, pulls);
}

IndexedFamily discrete_family(const FinFunctor& f, const ConcreteStructure& u) {
  require_over(f, u);
  const FinCat& c = f.source();
  const FinCat& d = f.target();
  std::vector<CatRef> disc(d.object_count());
  for (ObjectIndex y = 0; y < d.object_count(); ++y) {
    FinCat::Builder b("disc(" + d.object_id(y) + ")");
    for (const auto& e : u.carrier(y).elements) {
      const ObjectIndex x = b.add_object(e);
      b.set_identity(x, b.add_morphism(e, x, x));  // identity ids are the elements
    }
    disc[y] = share(std::move(b).build());
  }
  auto base = share(opposite(c));
  std::vector<std::pair<std::string, CatRef>> fibres;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) fibres.emplace_back(c.object_id(x), disc[f.map_object(x)]);
  std::vector<std::pair<std::string, FinFunctor>> pulls;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const MorphismIndex dm = f.map_morphism(m);
    const FinFn& fn = u.action(dm);
    pulls.emplace_back(base->morphism_id(m), FinFunctor("U(" + d.morphism_id(dm) + ")", disc[d.dom(dm)],
                                                        disc[d.cod(dm)], fn.map, fn.map));
  }
  return make_indexed("disc_" + f.name() + "_" + u.name(), base, fibres, pulls);
}

ConstructedCategory grothendieck_strict(const IndexedFamily& fam) {
  check_strict(fam);
  const FinCat& b = *fam.base;
  Assembly a("groth_" + fam.name, fam.base);
  std::vector<std::size_t> off(b.object_count() + 1, 0);
  for (ObjectIndex i = 0; i < b.object_count(); ++i) off[i + 1] = off[i] + fam.fibre[i]->object_count();
  for (ObjectIndex i = 0; i < b.object_count(); ++i)
    for (const auto& x : fam.fibre[i]->objects()) a.object({b.object_id(i), x}, i);

  // (u, phi, Y): phi in fibre(dom u) ending at pull(u)(Y), Y in fibre(cod u).
  std::vector<std::tuple<MorphismIndex, MorphismIndex, ObjectIndex>> parts;
  std::map<std::tuple<MorphismIndex, MorphismIndex, ObjectIndex>, MorphismIndex> index;
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
    const FinCat& src = *fam.fibre[b.dom(u)];
    const FinCat& tgt = *fam.fibre[b.cod(u)];
    for (ObjectIndex y = 0; y < tgt.object_count(); ++y) {
      const ObjectIndex py = fam.pull[u].map_object(y);
      for (MorphismIndex phi = 0; phi < src.morphism_count(); ++phi) {
        if (src.cod(phi) != py) continue;
        index[{u, phi, y}] = a.morphism({b.morphism_id(u), src.morphism_id(phi), tgt.object_id(y)},
                                        off[b.dom(u)] + src.dom(phi), off[b.cod(u)] + y, u);
        parts.emplace_back(u, phi, y);
      }
    }
  }
  for (ObjectIndex i = 0; i < b.object_count(); ++i) {
    const FinCat& fi = *fam.fibre[i];
    for (ObjectIndex x = 0; x < fi.object_count(); ++x) a.identity(off[i] + x, index.at({b.identity(i), fi.identity(x), x}));
  }

  Cleavage gamma{LiftKind::Cartesian, off.back(), std::vector<MorphismIndex>(b.morphism_count() * off.back(), kNoMorphism)};
  for (MorphismIndex u = 0; u < b.morphism_count(); ++u) {
    const FinCat& src = *fam.fibre[b.dom(u)];
    for (ObjectIndex y = 0; y < fam.fibre[b.cod(u)]->object_count(); ++y)
      gamma.at(u, off[b.cod(u)] + y) = index.at({u, src.identity(fam.pull[u].map_object(y)), y});
  }

  return a.finish(
      Provenance::Grothendieck,
      [&](MorphismIndex g, MorphismIndex f) {
        auto [v, psi, z] = parts[g];
        auto [u, phi, y] = parts[f];
        const FinCat& fi = *fam.fibre[b.dom(u)];
        return index.at({b.compose(v, u), fi.compose(fam.pull[u].map_morphism(psi), phi), z});
      },
      std::move(gamma));
}

ConstructedCategory transformation_groupoid(const GroupAction& act) {
  const FinCat& g = *act.group;
  const std::size_t n = act.carrier.size();
  Assembly a("tg_" + act.name, act.group);
  for (const auto& x : act.carrier.elements) a.object({g.object_id(0), x}, 0, x);
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m)
    for (std::size_t x = 0; x < n; ++x) a.morphism({g.morphism_id(m), act.carrier.elements[x]}, x, act.phi[m](x), m);
  for (std::size_t x = 0; x < n; ++x) a.identity(x, g.identity(0) * n + x);
  return a.finish(Provenance::TransGroupoid, [&](MorphismIndex p, MorphismIndex q) {
    return g.compose(p / n, q / n) * n + q % n;
  });
}

// ---------------------------------------------------------------------------

ActionFunctor action_as_functor(const GroupAction& act) {
  const FinCat& g = *act.group;
  std::vector<FinFn> fns;
  std::vector<MorphismIndex> which(g.morphism_count());
  FinCat::Builder b(act.name + "_image");
  b.add_object(act.carrier.id);
  for (MorphismIndex m = 0; m < g.morphism_count(); ++m) {
    auto it = std::find(fns.begin(), fns.end(), act.phi[m]);
    if (it == fns.end()) {
      which[m] = b.add_morphism("phi_" + g.morphism_id(m), 0, 0);
      fns.push_back(act.phi[m]);
    } else {
      which[m] = static_cast<MorphismIndex>(it - fns.begin());
    }
  }
  b.set_identity(0, which[g.identity(0)]);
  for (MorphismIndex p = 0; p < fns.size(); ++p)
    for (MorphismIndex q = 0; q < fns.size(); ++q) {
      const FinFn pq = compose_fn(fns[p], fns[q]);
      b.set_compose(p, q, static_cast<MorphismIndex>(std::find(fns.begin(), fns.end(), pq) - fns.begin()));
    }
  auto image = share(std::move(b).build());
  FinFunctor functor(act.name, act.group, image, {0}, which);
  ConcreteStructure underlying = make_concrete("U_" + act.name, image, {act.carrier}, fns);
  return {image, std::move(functor), std::move(underlying)};
}

IsoWitness groupoid_inverse_witness(const CatRef& c) {
  auto op = share(opposite(*c));
  std::vector<ObjectIndex> objects(c->object_count());
  for (ObjectIndex x = 0; x < objects.size(); ++x) objects[x] = x;
  std::vector<MorphismIndex> inv(c->morphism_count());
  for (MorphismIndex m = 0; m < inv.size(); ++m) {
    auto i = c->inverse(m);
    if (!i) throw ValidationError(ErrorKind::NotAGroup, {c->morphism_id(m)}, "not invertible");
    inv[m] = *i;
  }
  IsoWitness w{FinFunctor("inv_" + c->name(), c, op, objects, inv), FinFunctor("inv_" + op->name(), op, c, objects, inv)};
  validate_iso(w);
  return w;
}

std::optional<IsoWitness> projection_witness(const ConstructedCategory& c) {
  const FinFunctor& p = c.projection;
  if (!p.bijective()) return std::nullopt;
  std::vector<ObjectIndex> objects(p.target().object_count());
  std::vector<MorphismIndex> morphisms(p.target().morphism_count());
  for (ObjectIndex x = 0; x < p.source().object_count(); ++x) objects[p.map_object(x)] = x;
  for (MorphismIndex m = 0; m < p.source().morphism_count(); ++m) morphisms[p.map_morphism(m)] = m;
  IsoWitness w{p, FinFunctor(p.name() + "_inv", p.target_ref(), p.source_ref(), objects, morphisms)};
  validate_iso(w);
  return w;
}

std::variant<IsoWitness, NoConcreteIso> concrete_iso(const ConstructedCategory& a, const ConstructedCategory& b) {
  const FinCat& ca = *a.cat;
  const FinCat& cb = *b.cat;
  if (ca.object_count() != cb.object_count() || ca.morphism_count() != cb.morphism_count())
    return NoConcreteIso{"sizes differ: " + std::to_string(ca.object_count()) + "/" +
                         std::to_string(ca.morphism_count()) + " vs " + std::to_string(cb.object_count()) + "/" +
                         std::to_string(cb.morphism_count())};
  auto key = [](const ConstructedCategory& c, MorphismIndex m) {
    const FinCat& cat = *c.cat;
    return std::make_tuple(cat.object_id(cat.dom(m)), cat.object_id(cat.cod(m)),
                           erase_op_tags(c.base().morphism_id(c.projection.map_morphism(m))));
  };
  std::vector<ObjectIndex> fo(ca.object_count()), bo(cb.object_count());
  for (ObjectIndex x = 0; x < ca.object_count(); ++x) {
    auto y = cb.find_object(ca.object_id(x));
    if (!y) return NoConcreteIso{"object " + ca.object_id(x) + " has no namesake"};
    fo[x] = *y;
    bo[*y] = x;
  }
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<MorphismIndex>> in_b;
  for (MorphismIndex m = 0; m < cb.morphism_count(); ++m) in_b[key(b, m)].push_back(m);
  std::vector<MorphismIndex> fm(ca.morphism_count()), bm(cb.morphism_count(), kNoMorphism);
  for (MorphismIndex m = 0; m < ca.morphism_count(); ++m) {
    auto it = in_b.find(key(a, m));
    if (it == in_b.end() || it->second.size() != 1)
      return NoConcreteIso{"morphism " + ca.morphism_id(m) + " has " +
                           std::to_string(it == in_b.end() ? 0 : it->second.size()) + " matches"};
    fm[m] = it->second[0];
    if (bm[fm[m]] != kNoMorphism) return NoConcreteIso{"two morphisms share the match " + cb.morphism_id(fm[m])};
    bm[fm[m]] = m;
  }
  try {
    IsoWitness w{FinFunctor(ca.name() + "_to_" + cb.name(), a.cat, b.cat, fo, fm),
                 FinFunctor(cb.name() + "_to_" + ca.name(), b.cat, a.cat, bo, bm)};
    validate_iso(w);
    return w;
  } catch (const ValidationError& e) {
    return NoConcreteIso{e.what()};
  }
}

Prop4Result verify_prop4(const GroupAction& act) {
  auto af = action_as_functor(act);
  auto w = groupoid_inverse_witness(act.group);
  auto tg = transformation_groupoid(act);
  auto right = right_action_selfdual(af.functor, w, &af.underlying);
  const FinCat& t = *tg.cat;
  const FinCat& r = *right.cat;
  std::vector<ObjectIndex> fo(t.object_count()), bo(r.object_count());
  for (ObjectIndex x = 0; x < t.object_count(); ++x) {
    fo[x] = r.object_index(tg.object_labels[x].render());
    bo[fo[x]] = x;
  }
  std::vector<MorphismIndex> fm(t.morphism_count()), bm(r.morphism_count());
  for (MorphismIndex m = 0; m < t.morphism_count(); ++m) {
    fm[m] = r.morphism_index(t.morphism_id(m));
    bm[fm[m]] = m;
  }
  IsoWitness witness{FinFunctor("add_first", tg.cat, right.cat, fo, fm), FinFunctor("drop_first", right.cat, tg.cat, bo, bm)};
  validate_iso(witness);
  return {std::move(tg), std::move(right), std::move(witness)};
}

Report verify_main_prop(const FinFunctor& f, const ConcreteStructure* u, const IsoWitness* w) {
  Report report("main " + f.name());
  auto leg = [&](const std::string& claim, const std::function<std::string()>& body) {
    try {
      report.pass(claim, body());
    } catch (const ValidationError& e) {
      report.fail(claim, e.what());
    } catch (const std::logic_error& e) {
      report.fail(claim, e.what());
    }
  };
  auto abstract_leg = [&](const ConstructedCategory& c) {
    if (!projection_witness(c)) throw ValidationError(ErrorKind::NotFunctorial, {c.cat->name()}, "projection not bijective");
    return std::to_string(c.cat->object_count()) + " objects, " + std::to_string(c.cat->morphism_count()) +
           " morphisms, projection inverts";
  };
  leg("main.i.graph", [&] { return abstract_leg(graph_category(f)); });
  leg("main.i.left", [&] { return abstract_leg(abstract_left_action(f)); });
  if (w)
    leg("main.ii.selfdual", [&] { return abstract_leg(right_action_selfdual(f, *w)); });
  else
    report.skip("main.ii.selfdual", "no self-duality witness");

  if (!u) {
    for (const char* c : {"main.iii.graph~left", "main.iii.graph~right", "main.iii.left~right", "main.iv.objects"})
      report.skip(c, "no concrete structure");
    return report;
  }
  std::optional<ConstructedCategory> graph, left, right;
  leg("main.iii.build", [&] {
    graph = concrete_graph_category(f, *u);
    left = concrete_left_action(f, *u);
    right = w ? right_action_selfdual(f, *w, u) : opposite(concrete_right_action(f, *u));
    return std::string(w ? "Def2, Def6, Def8" : "Def2, Def6, opposite of Def4");
  });
  if (!graph || !left || !right) return report;
  auto iso_leg = [&](const std::string& claim, const ConstructedCategory& a, const ConstructedCategory& b) {
    auto r = concrete_iso(a, b);
    if (auto* bad = std::get_if<NoConcreteIso>(&r))
      report.fail(claim, a.cat->name() + " vs " + b.cat->name() + ": " + bad->reason);
    else
      report.pass(claim, std::to_string(a.cat->object_count()) + " objects, " +
                             std::to_string(a.cat->morphism_count()) + " morphisms over " + f.source().name());
  };
  iso_leg("main.iii.graph~left", *graph, *left);
  iso_leg("main.iii.graph~right", *graph, *right);
  iso_leg("main.iii.left~right", *left, *right);

  const FinCat& c = f.source();
  bool empty = false, big = false;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    const std::size_t n = u->carrier(f.map_object(x)).size();
    empty = empty || n == 0;
    big = big || n >= 2;
  }
  const std::string counts = std::to_string(graph->cat->object_count()) + " concrete objects vs " +
                             std::to_string(c.object_count()) + " base objects";
  if (!big || empty)
    report.skip("main.iv.objects", (empty ? "an empty carrier; " : "all carriers singletons; ") + counts);
  else if (graph->cat->object_count() != c.object_count() && left->cat->object_count() != c.object_count() &&
           right->cat->object_count() != c.object_count())
    report.pass("main.iv.objects", counts);
  else
    report.fail("main.iv.objects", counts);
  return report;
}

}  // namespace basecat
