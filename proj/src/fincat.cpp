#include "basecat/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace basecat {

std::string default_identity_id(std::string_view object) { return "id_" + std::string(object); }

// ---------------------------------------------------------------------------
// FinCat

std::optional<ObjectIndex> FinCat::find_object(std::string_view id) const {
  for (ObjectIndex x = 0; x < objects_.size(); ++x)
    if (objects_[x] == id) return x;
  return std::nullopt;
}

std::optional<MorphismIndex> FinCat::find_morphism(std::string_view id) const {
  for (MorphismIndex m = 0; m < morphisms_.size(); ++m)
    if (morphisms_[m].id == id) return m;
  return std::nullopt;
}

ObjectIndex FinCat::object_index(std::string_view id) const {
  if (auto x = find_object(id)) return *x;
  throw ValidationError(ErrorKind::UnknownObject, {std::string(id)}, "in category " + name_);
}

MorphismIndex FinCat::morphism_index(std::string_view id) const {
  if (auto m = find_morphism(id)) return *m;
  throw ValidationError(ErrorKind::UnknownMorphism, {std::string(id)}, "in category " + name_);
}

std::optional<MorphismIndex> FinCat::try_compose(MorphismIndex g, MorphismIndex f) const {
  if (!composable(g, f)) return std::nullopt;
  return table_[g * morphisms_.size() + f];
}

MorphismIndex FinCat::compose(MorphismIndex g, MorphismIndex f) const {
  if (!composable(g, f))
    throw std::logic_error("compose: " + morphism_id(g) + " . " + morphism_id(f) + " not composable");
  return table_[g * morphisms_.size() + f];
}

std::optional<MorphismIndex> FinCat::inverse(MorphismIndex m) const {
  const auto& [id, a, b] = morphisms_.at(m);
  for (MorphismIndex k : hom(b, a))
    if (compose(k, m) == identity_[a] && compose(m, k) == identity_[b]) return k;
  return std::nullopt;
}

bool FinCat::operator==(const FinCat& other) const {
  return name_ == other.name_ && objects_ == other.objects_ && morphisms_ == other.morphisms_ &&
         identity_ == other.identity_ && table_ == other.table_;
}

void FinCat::index_homs() {
  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  for (MorphismIndex m = 0; m < morphisms_.size(); ++m)
    hom_[morphisms_[m].dom * n + morphisms_[m].cod].push_back(m);
}

// ---------------------------------------------------------------------------
// Builder

ObjectIndex FinCat::Builder::add_object(std::string id) {
  if (find_object(id)) throw ValidationError(ErrorKind::DuplicateId, {id}, "object declared twice");
  objects_.push_back(std::move(id));
  identity_.push_back(kNoMorphism);
  return objects_.size() - 1;
}

MorphismIndex FinCat::Builder::add_morphism(std::string id, ObjectIndex dom, ObjectIndex cod) {
  if (find_morphism(id)) throw ValidationError(ErrorKind::DuplicateId, {id}, "morphism declared twice");
  if (dom >= objects_.size() || cod >= objects_.size())
    throw std::out_of_range("Builder::add_morphism: object index");
  morphisms_.push_back({std::move(id), dom, cod});
  return morphisms_.size() - 1;
}

void FinCat::Builder::set_identity(ObjectIndex x, MorphismIndex m) {
  const Morphism& mor = morphisms_.at(m);
  if (mor.dom != x || mor.cod != x)
    throw ValidationError(ErrorKind::DomCodMismatch, {mor.id, mor.id},
                          "identity of " + objects_.at(x) + " must be an endomorphism of it");
  identity_.at(x) = m;
}

void FinCat::Builder::set_compose(MorphismIndex g, MorphismIndex f, MorphismIndex r) {
  const Morphism& mg = morphisms_.at(g);
  const Morphism& mf = morphisms_.at(f);
  const Morphism& mr = morphisms_.at(r);
  if (mf.cod != mg.dom)
    throw ValidationError(ErrorKind::DomCodMismatch, {mg.id, mf.id}, "cod f differs from dom g");
  if (mr.dom != mf.dom || mr.cod != mg.cod)
    throw ValidationError(ErrorKind::DomCodMismatch, {mg.id, mf.id},
                          "composite " + mr.id + " has the wrong domain or codomain");
  composites_.emplace_back(g, f, r);
}

std::optional<ObjectIndex> FinCat::Builder::find_object(std::string_view id) const {
  auto it = std::find(objects_.begin(), objects_.end(), id);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjectIndex>(it - objects_.begin());
}

std::optional<MorphismIndex> FinCat::Builder::find_morphism(std::string_view id) const {
  for (MorphismIndex m = 0; m < morphisms_.size(); ++m)
    if (morphisms_[m].id == id) return m;
  return std::nullopt;
}

FinCat FinCat::Builder::build() && {
  const std::size_t nm = morphisms_.size();
  for (ObjectIndex x = 0; x < objects_.size(); ++x)
    if (identity_[x] == kNoMorphism) throw std::logic_error("Builder: no identity for " + objects_[x]);

  auto is_id = [&](MorphismIndex m) { return identity_[morphisms_[m].dom] == m; };

  std::vector<MorphismIndex> table(nm * nm, kNoMorphism);
  for (MorphismIndex f = 0; f < nm; ++f) {
    table[identity_[morphisms_[f].cod] * nm + f] = f;
    table[f * nm + identity_[morphisms_[f].dom]] = f;
  }

  std::vector<bool> explicit_entry(nm * nm, false);
  for (auto [g, f, r] : composites_) {
    MorphismIndex& slot = table[g * nm + f];
    if (is_id(g) || is_id(f)) {
      if (slot != r) {
        MorphismIndex culprit = is_id(g) ? f : g;
        throw ValidationError(ErrorKind::UnitLawViolation, {morphisms_[culprit].id},
                              morphisms_[g].id + " . " + morphisms_[f].id + " = " + morphisms_[r].id);
      }
      continue;
    }
    if (explicit_entry[g * nm + f] && slot != r)
      throw ValidationError(ErrorKind::ConflictingComposite, {morphisms_[g].id, morphisms_[f].id});
    slot = r;
    explicit_entry[g * nm + f] = true;
  }

  for (MorphismIndex g = 0; g < nm; ++g)
    for (MorphismIndex f = 0; f < nm; ++f)
      if (morphisms_[f].cod == morphisms_[g].dom && table[g * nm + f] == kNoMorphism)
        throw ValidationError(ErrorKind::MissingComposite, {morphisms_[g].id, morphisms_[f].id});

  for (MorphismIndex h = 0; h < nm; ++h)
    for (MorphismIndex g = 0; g < nm; ++g) {
      if (morphisms_[g].cod != morphisms_[h].dom) continue;
      const MorphismIndex hg = table[h * nm + g];
      for (MorphismIndex f = 0; f < nm; ++f) {
        if (morphisms_[f].cod != morphisms_[g].dom) continue;
        const MorphismIndex gf = table[g * nm + f];
        if (table[h * nm + gf] != table[hg * nm + f])
          throw ValidationError(ErrorKind::AssociativityViolation,
                                {morphisms_[h].id, morphisms_[g].id, morphisms_[f].id});
      }
    }

  FinCat cat;
  cat.name_ = std::move(name_);
  cat.objects_ = std::move(objects_);
  cat.morphisms_ = std::move(morphisms_);
  cat.identity_ = std::move(identity_);
  cat.table_ = std::move(table);
  cat.index_homs();
  return cat;
}

// ---------------------------------------------------------------------------
// Raw presentations

FinCat validate_category(const RawCategory& raw) {
  FinCat::Builder b(raw.name);
  for (const auto& o : raw.objects) b.add_object(o);

  std::vector<std::string> identity_ids(raw.objects.size());
  std::vector<bool> declared(raw.objects.size(), false);
  for (const auto& [obj, mor] : raw.identities) {
    auto x = b.find_object(obj);
    if (!x) throw ValidationError(ErrorKind::UnknownObject, {obj}, "in identities of " + raw.name);
    if (declared[*x]) throw ValidationError(ErrorKind::DuplicateId, {obj}, "identity declared twice");
    declared[*x] = true;
    identity_ids[*x] = mor;
  }
  for (ObjectIndex x = 0; x < raw.objects.size(); ++x) {
    if (!declared[x]) identity_ids[x] = default_identity_id(raw.objects[x]);
    b.set_identity(x, b.add_morphism(identity_ids[x], x, x));
  }

  for (const auto& a : raw.arrows) {
    auto dom = b.find_object(a.dom);
    if (!dom) throw ValidationError(ErrorKind::UnknownObject, {a.dom}, "domain of " + a.id);
    auto cod = b.find_object(a.cod);
    if (!cod) throw ValidationError(ErrorKind::UnknownObject, {a.cod}, "codomain of " + a.id);
    if (auto existing = b.find_morphism(a.id)) {
      const Morphism& m = b.morphism(*existing);
      if (*existing < raw.objects.size() && m.dom == *dom && m.cod == *cod) continue;  // restated identity
      throw ValidationError(ErrorKind::DuplicateId, {a.id}, "morphism declared twice");
    }
    b.add_morphism(a.id, *dom, *cod);
  }

  auto lookup = [&](const std::string& id) {
    auto m = b.find_morphism(id);
    if (!m) throw ValidationError(ErrorKind::UnknownMorphism, {id}, "in compose table of " + raw.name);
    return *m;
  };
  for (const auto& c : raw.compose) b.set_compose(lookup(c.g), lookup(c.f), lookup(c.result));
  return std::move(b).build();
}

RawCategory to_raw(const FinCat& cat) {
  RawCategory raw;
  raw.name = cat.name();
  raw.objects.assign(cat.objects().begin(), cat.objects().end());
  for (ObjectIndex x = 0; x < cat.object_count(); ++x) {
    const std::string& id = cat.morphism_id(cat.identity(x));
    if (id != default_identity_id(cat.object_id(x))) raw.identities.emplace_back(cat.object_id(x), id);
  }
  for (MorphismIndex m = 0; m < cat.morphism_count(); ++m) {
    if (cat.is_identity(m)) continue;
    const Morphism& mor = cat.morphism(m);
    raw.arrows.push_back({mor.id, cat.object_id(mor.dom), cat.object_id(mor.cod)});
  }
  for (MorphismIndex g = 0; g < cat.morphism_count(); ++g) {
    if (cat.is_identity(g)) continue;
    for (MorphismIndex f = 0; f < cat.morphism_count(); ++f) {
      if (cat.is_identity(f) || !cat.composable(g, f)) continue;
      raw.compose.push_back({cat.morphism_id(g), cat.morphism_id(f), cat.morphism_id(cat.compose(g, f))});
    }
  }
  return raw;
}

// ---------------------------------------------------------------------------
// FinFunctor

FinFunctor::FinFunctor(std::string name, CatRef source, CatRef target, std::vector<ObjectIndex> object_map,
                       std::vector<MorphismIndex> morphism_map)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      object_map_(std::move(object_map)),
      morphism_map_(std::move(morphism_map)) {
  const FinCat& s = *source_;
  const FinCat& t = *target_;
  for (ObjectIndex x = 0; x < s.object_count(); ++x)
    if (x >= object_map_.size() || object_map_[x] >= t.object_count())
      throw ValidationError(ErrorKind::UnmappedObject, {s.object_id(x)}, "functor " + name_);
  for (MorphismIndex m = 0; m < s.morphism_count(); ++m)
    if (m >= morphism_map_.size() || morphism_map_[m] >= t.morphism_count())
      throw ValidationError(ErrorKind::UnmappedMorphism, {s.morphism_id(m)}, "functor " + name_);
  object_map_.resize(s.object_count());
  morphism_map_.resize(s.morphism_count());

  for (ObjectIndex x = 0; x < s.object_count(); ++x)
    if (morphism_map_[s.identity(x)] != t.identity(object_map_[x]))
      throw ValidationError(ErrorKind::IdentityNotPreserved, {s.object_id(x)}, "functor " + name_);
  for (MorphismIndex m = 0; m < s.morphism_count(); ++m) {
    const MorphismIndex img = morphism_map_[m];
    if (t.dom(img) != object_map_[s.dom(m)] || t.cod(img) != object_map_[s.cod(m)])
      throw ValidationError(ErrorKind::DomCodNotPreserved, {s.morphism_id(m)}, "functor " + name_);
  }
  for (MorphismIndex g = 0; g < s.morphism_count(); ++g)
    for (MorphismIndex f = 0; f < s.morphism_count(); ++f) {
      if (!s.composable(g, f)) continue;
      if (morphism_map_[s.compose(g, f)] != t.compose(morphism_map_[g], morphism_map_[f]))
        throw ValidationError(ErrorKind::CompositionNotPreserved, {s.morphism_id(g), s.morphism_id(f)},
                              "functor " + name_);
    }
}

FinFunctor FinFunctor::identity(CatRef cat, std::string name) {
  std::vector<ObjectIndex> objs(cat->object_count());
  std::iota(objs.begin(), objs.end(), 0);
  std::vector<MorphismIndex> mors(cat->morphism_count());
  std::iota(mors.begin(), mors.end(), 0);
  if (name.empty()) name = "id_" + cat->name();
  return FinFunctor(std::move(name), cat, cat, std::move(objs), std::move(mors));
}

bool FinFunctor::is_identity() const {
  if (!same_presentation(source(), target())) return false;
  for (ObjectIndex x = 0; x < object_map_.size(); ++x)
    if (object_map_[x] != x) return false;
  for (MorphismIndex m = 0; m < morphism_map_.size(); ++m)
    if (morphism_map_[m] != m) return false;
  return true;
}

bool FinFunctor::bijective() const {
  if (source().object_count() != target().object_count() ||
      source().morphism_count() != target().morphism_count())
    return false;
  std::set<ObjectIndex> objs(object_map_.begin(), object_map_.end());
  std::set<MorphismIndex> mors(morphism_map_.begin(), morphism_map_.end());
  return objs.size() == object_map_.size() && mors.size() == morphism_map_.size();
}

bool FinFunctor::same_maps(const FinFunctor& other) const {
  return object_map_ == other.object_map_ && morphism_map_ == other.morphism_map_;
}

FinFunctor validate_functor(const RawFunctor& raw, CatRef source, CatRef target) {
  const FinCat& s = *source;
  const FinCat& t = *target;
  if (!raw.source.empty() && raw.source != s.name())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {raw.source, s.name()}, "functor " + raw.name);
  if (!raw.target.empty() && raw.target != t.name())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {raw.target, t.name()}, "functor " + raw.name);

  std::vector<ObjectIndex> objs(s.object_count(), static_cast<ObjectIndex>(-1));
  for (const auto& [from, to] : raw.objects) {
    const ObjectIndex x = s.object_index(from);
    if (objs[x] != static_cast<ObjectIndex>(-1))
      throw ValidationError(ErrorKind::DuplicateId, {from}, "object mapped twice in " + raw.name);
    objs[x] = t.object_index(to);
  }
  for (ObjectIndex x = 0; x < s.object_count(); ++x)
    if (objs[x] == static_cast<ObjectIndex>(-1))
      throw ValidationError(ErrorKind::UnmappedObject, {s.object_id(x)}, "functor " + raw.name);

  std::vector<MorphismIndex> mors(s.morphism_count(), kNoMorphism);
  for (const auto& [from, to] : raw.arrows) {
    const MorphismIndex m = s.morphism_index(from);
    if (mors[m] != kNoMorphism)
      throw ValidationError(ErrorKind::DuplicateId, {from}, "morphism mapped twice in " + raw.name);
    mors[m] = t.morphism_index(to);
  }
  for (MorphismIndex m = 0; m < s.morphism_count(); ++m) {
    if (mors[m] != kNoMorphism) continue;
    if (!s.is_identity(m)) throw ValidationError(ErrorKind::UnmappedMorphism, {s.morphism_id(m)}, "functor " + raw.name);
    mors[m] = t.identity(objs[s.dom(m)]);
  }
  return FinFunctor(raw.name, std::move(source), std::move(target), std::move(objs), std::move(mors));
}

RawFunctor to_raw(const FinFunctor& functor) {
  RawFunctor raw{functor.name(), functor.source().name(), functor.target().name(), {}, {}};
  const FinCat& s = functor.source();
  const FinCat& t = functor.target();
  for (ObjectIndex x = 0; x < s.object_count(); ++x)
    raw.objects.emplace_back(s.object_id(x), t.object_id(functor.map_object(x)));
  for (MorphismIndex m = 0; m < s.morphism_count(); ++m)
    if (!s.is_identity(m)) raw.arrows.emplace_back(s.morphism_id(m), t.morphism_id(functor.map_morphism(m)));
  return raw;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (f.target_ref() != g.source_ref() && !same_presentation(f.target(), g.source()))
    throw ValidationError(ErrorKind::SourceTargetMismatch, {f.target().name(), g.source().name()},
                          "cannot compose " + g.name() + " after " + f.name());
  std::vector<ObjectIndex> objs(f.source().object_count());
  for (ObjectIndex x = 0; x < objs.size(); ++x) objs[x] = g.map_object(f.map_object(x));
  std::vector<MorphismIndex> mors(f.source().morphism_count());
  for (MorphismIndex m = 0; m < mors.size(); ++m) mors[m] = g.map_morphism(f.map_morphism(m));
  return FinFunctor(g.name() + "_o_" + f.name(), f.source_ref(), g.target_ref(), std::move(objs), std::move(mors));
}

void validate_iso(const IsoWitness& w) {
  const FinFunctor there_and_back = compose_functors(w.backward, w.forward);
  const FinFunctor back_and_there = compose_functors(w.forward, w.backward);
  if (!there_and_back.is_identity())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {w.forward.name(), w.backward.name()},
                          "backward . forward is not the identity");
  if (!back_and_there.is_identity())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {w.forward.name(), w.backward.name()},
                          "forward . backward is not the identity");
}

// ---------------------------------------------------------------------------
// Structural operations

FinCat opposite(const FinCat& cat) {
  FinCat op;
  op.name_ = cat.name_ + std::string(kOpTag);
  op.objects_ = cat.objects_;
  op.morphisms_.reserve(cat.morphisms_.size());
  for (const auto& m : cat.morphisms_) op.morphisms_.push_back({m.id + std::string(kOpTag), m.cod, m.dom});
  op.identity_ = cat.identity_;
  const std::size_t nm = cat.morphisms_.size();
  op.table_.assign(nm * nm, kNoMorphism);
  for (MorphismIndex a = 0; a < nm; ++a)
    for (MorphismIndex b = 0; b < nm; ++b) op.table_[a * nm + b] = cat.table_[b * nm + a];
  op.index_homs();
  return op;
}

FinFunctor opposite_functor(const FinFunctor& f) {
  auto src = std::make_shared<const FinCat>(opposite(f.source()));
  auto tgt = std::make_shared<const FinCat>(opposite(f.target()));
  return FinFunctor(f.name() + std::string(kOpTag), src, tgt, f.object_map(), f.morphism_map());
}

bool same_presentation(const FinCat& a, const FinCat& b) {
  if (&a == &b) return true;
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
  if (!std::equal(a.objects().begin(), a.objects().end(), b.objects().begin())) return false;
  if (!std::equal(a.morphisms().begin(), a.morphisms().end(), b.morphisms().begin())) return false;
  for (ObjectIndex x = 0; x < a.object_count(); ++x)
    if (a.identity(x) != b.identity(x)) return false;
  for (MorphismIndex g = 0; g < a.morphism_count(); ++g)
    for (MorphismIndex f = 0; f < a.morphism_count(); ++f)
      if (a.composable(g, f) && a.compose(g, f) != b.compose(g, f)) return false;
  return true;
}

std::string erase_op_tags(std::string_view id) {
  std::string s(id);
  for (;;) {
    std::string out;
    out.reserve(s.size());
    bool changed = false;
    for (std::size_t i = 0; i < s.size();) {
      if (s.compare(i, kOpTag.size(), kOpTag) == 0) {
        const std::size_t next = i + kOpTag.size();
        if (next == s.size() || s[next] == ',' || s[next] == ')') {
          i = next;
          changed = true;
          continue;
        }
      }
      out += s[i++];
    }
    s = std::move(out);
    if (!changed) return s;
  }
}

FinCat normalize(const FinCat& cat, std::string name) {
  const std::size_t no = cat.object_count();
  const std::size_t nm = cat.morphism_count();
  std::vector<std::string> obj_ids(no), mor_ids(nm);
  for (ObjectIndex x = 0; x < no; ++x) obj_ids[x] = erase_op_tags(cat.object_id(x));
  for (MorphismIndex m = 0; m < nm; ++m) mor_ids[m] = erase_op_tags(cat.morphism_id(m));

  std::vector<ObjectIndex> obj_order(no);
  std::iota(obj_order.begin(), obj_order.end(), 0);
  std::sort(obj_order.begin(), obj_order.end(), [&](auto a, auto b) { return obj_ids[a] < obj_ids[b]; });
  std::vector<MorphismIndex> mor_order(nm);
  std::iota(mor_order.begin(), mor_order.end(), 0);
  std::sort(mor_order.begin(), mor_order.end(), [&](auto a, auto b) { return mor_ids[a] < mor_ids[b]; });
  for (std::size_t i = 1; i < no; ++i)
    if (obj_ids[obj_order[i]] == obj_ids[obj_order[i - 1]])
      throw ValidationError(ErrorKind::DuplicateId, {obj_ids[obj_order[i]]}, "normalizing " + cat.name());
  for (std::size_t i = 1; i < nm; ++i)
    if (mor_ids[mor_order[i]] == mor_ids[mor_order[i - 1]])
      throw ValidationError(ErrorKind::DuplicateId, {mor_ids[mor_order[i]]}, "normalizing " + cat.name());

  std::vector<ObjectIndex> obj_pos(no);
  for (std::size_t i = 0; i < no; ++i) obj_pos[obj_order[i]] = i;
  std::vector<MorphismIndex> mor_pos(nm);
  for (std::size_t i = 0; i < nm; ++i) mor_pos[mor_order[i]] = i;

  FinCat out;
  out.name_ = std::move(name);
  for (ObjectIndex x : obj_order) out.objects_.push_back(obj_ids[x]);
  for (MorphismIndex m : mor_order)
    out.morphisms_.push_back({mor_ids[m], obj_pos[cat.dom(m)], obj_pos[cat.cod(m)]});
  out.identity_.resize(no);
  for (ObjectIndex x = 0; x < no; ++x) out.identity_[obj_pos[x]] = mor_pos[cat.identity(x)];
  out.table_.assign(nm * nm, kNoMorphism);
  for (MorphismIndex g = 0; g < nm; ++g)
    for (MorphismIndex f = 0; f < nm; ++f)
      if (cat.composable(g, f)) out.table_[mor_pos[g] * nm + mor_pos[f]] = mor_pos[cat.compose(g, f)];
  out.index_homs();
  return out;
}

ProductCategory product_category(const CatRef& left, const CatRef& right) {
  const FinCat& c = *left;
  const FinCat& d = *right;
  FinCat::Builder b(c.name() + "_x_" + d.name());
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (ObjectIndex y = 0; y < d.object_count(); ++y)
      b.add_object("(" + c.object_id(x) + "," + d.object_id(y) + ")");
  const std::size_t nd = d.object_count();
  const std::size_t md = d.morphism_count();
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f)
    for (MorphismIndex g = 0; g < md; ++g)
      b.add_morphism("(" + c.morphism_id(f) + "," + d.morphism_id(g) + ")", c.dom(f) * nd + d.dom(g),
                     c.cod(f) * nd + d.cod(g));
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (ObjectIndex y = 0; y < nd; ++y) b.set_identity(x * nd + y, c.identity(x) * md + d.identity(y));
  for (MorphismIndex f2 = 0; f2 < c.morphism_count(); ++f2)
    for (MorphismIndex f1 = 0; f1 < c.morphism_count(); ++f1) {
      if (!c.composable(f2, f1)) continue;
      const MorphismIndex f21 = c.compose(f2, f1);
      for (MorphismIndex g2 = 0; g2 < md; ++g2)
        for (MorphismIndex g1 = 0; g1 < md; ++g1)
          if (d.composable(g2, g1)) b.set_compose(f2 * md + g2, f1 * md + g1, f21 * md + d.compose(g2, g1));
    }
  auto product = std::make_shared<const FinCat>(std::move(b).build());

  std::vector<ObjectIndex> o1, o2;
  for (ObjectIndex x = 0; x < c.object_count(); ++x)
    for (ObjectIndex y = 0; y < nd; ++y) {
      o1.push_back(x);
      o2.push_back(y);
    }
  std::vector<MorphismIndex> m1, m2;
  for (MorphismIndex f = 0; f < c.morphism_count(); ++f)
    for (MorphismIndex g = 0; g < md; ++g) {
      m1.push_back(f);
      m2.push_back(g);
    }
  FinFunctor first("pi1", product, left, std::move(o1), std::move(m1));
  FinFunctor second("pi2", product, right, std::move(o2), std::move(m2));
  return {product, std::move(first), std::move(second)};
}

Coproduct coproduct_categories(const std::vector<CatRef>& parts, std::string name) {
  if (name.empty()) {
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "_plus_" : "") + parts[i]->name();
    if (name.empty()) name = "empty";
  }
  FinCat::Builder b(name);
  std::vector<std::size_t> obj_offset, mor_offset;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const FinCat& c = *parts[i];
    const std::string tag = "(" + std::to_string(i) + ",";
    obj_offset.push_back(b.object_count());
    for (const auto& x : c.objects()) b.add_object(tag + x + ")");
    mor_offset.push_back(b.morphism_count());
    for (const auto& m : c.morphisms()) b.add_morphism(tag + m.id + ")", obj_offset[i] + m.dom, obj_offset[i] + m.cod);
    for (ObjectIndex x = 0; x < c.object_count(); ++x) b.set_identity(obj_offset[i] + x, mor_offset[i] + c.identity(x));
    for (MorphismIndex g = 0; g < c.morphism_count(); ++g)
      for (MorphismIndex f = 0; f < c.morphism_count(); ++f)
        if (c.composable(g, f)) b.set_compose(mor_offset[i] + g, mor_offset[i] + f, mor_offset[i] + c.compose(g, f));
  }
  auto sum = std::make_shared<const FinCat>(std::move(b).build());
  std::vector<FinFunctor> injections;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::vector<ObjectIndex> objs(parts[i]->object_count());
    std::iota(objs.begin(), objs.end(), obj_offset[i]);
    std::vector<MorphismIndex> mors(parts[i]->morphism_count());
    std::iota(mors.begin(), mors.end(), mor_offset[i]);
    injections.emplace_back("in" + std::to_string(i), parts[i], sum, std::move(objs), std::move(mors));
  }
  return {sum, std::move(injections)};
}

}  // namespace basecat
