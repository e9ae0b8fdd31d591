#include "basecat/finset.hpp"

#include <set>
#include <stdexcept>

namespace basecat {

std::optional<std::size_t> FinSetObj::find(std::string_view element) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == element) return i;
  return std::nullopt;
}

FinSetObj make_finset(std::string id, std::vector<std::string> elements) {
  std::set<std::string_view> seen;
  for (const auto& e : elements)
    if (!seen.insert(e).second) throw ValidationError(ErrorKind::DuplicateId, {e}, "in set " + id);
  return {std::move(id), std::move(elements)};
}

FinFn make_fn(const FinSetObj& dom, const FinSetObj& cod, const std::vector<std::pair<std::string, std::string>>& pairs,
              const std::string& name) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(dom.size(), unset);
  for (const auto& [x, y] : pairs) {
    auto i = dom.find(x);
    if (!i) throw ValidationError(ErrorKind::UnknownElement, {name, x}, "not in " + dom.id);
    auto j = cod.find(y);
    if (!j) throw ValidationError(ErrorKind::UnknownElement, {name, y}, "not in " + cod.id);
    if (map[*i] != unset) throw ValidationError(ErrorKind::DuplicateId, {x}, "mapped twice by " + name);
    map[*i] = *j;
  }
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] == unset) throw ValidationError(ErrorKind::PartialFunction, {name, dom.elements[i]});
  return {dom, cod, std::move(map)};
}

FinFn identity_fn(const FinSetObj& set) {
  FinFn f{set, set, std::vector<std::size_t>(set.size())};
  for (std::size_t i = 0; i < set.size(); ++i) f.map[i] = i;
  return f;
}

FinFn compose_fn(const FinFn& g, const FinFn& f) {
  if (!(f.cod == g.dom)) throw ValidationError(ErrorKind::CodomainMismatch, {f.cod.id, g.dom.id});
  FinFn out{f.dom, g.cod, std::vector<std::size_t>(f.dom.size())};
  for (std::size_t i = 0; i < f.dom.size(); ++i) out.map[i] = g.map[f.map[i]];
  return out;
}

bool is_identity_fn(const FinFn& f) {
  if (!(f.dom == f.cod)) return false;
  for (std::size_t i = 0; i < f.map.size(); ++i)
    if (f.map[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------

ConcreteStructure::ConcreteStructure(std::string name, CatRef over, std::vector<FinSetObj> carrier,
                                     std::vector<FinFn> action)
    : name_(std::move(name)), over_(std::move(over)), carrier_(std::move(carrier)), action_(std::move(action)) {}

ConcreteStructure make_concrete(std::string name, CatRef over, std::vector<FinSetObj> carrier, std::vector<FinFn> action,
                                ConcreteOptions options) {
  const FinCat& c = *over;
  if (carrier.size() != c.object_count())
    throw std::invalid_argument("make_concrete: one carrier per object required in " + name);
  if (action.size() != c.morphism_count())
    throw std::invalid_argument("make_concrete: one function per morphism required in " + name);
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    const FinFn& fn = action[m];
    if (!(fn.dom == carrier[c.dom(m)]) || !(fn.cod == carrier[c.cod(m)]))
      throw ValidationError(ErrorKind::CodomainMismatch, {c.morphism_id(m)}, "function has the wrong sets");
  }
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    const MorphismIndex id = c.identity(x);
    if (!is_identity_fn(action[id]))
      throw ValidationError(ErrorKind::NotFunctorial, {c.morphism_id(id), c.morphism_id(id)},
                            "identity must act as the identity function");
  }
  for (MorphismIndex g = 0; g < c.morphism_count(); ++g)
    for (MorphismIndex f = 0; f < c.morphism_count(); ++f)
      if (c.composable(g, f) && !(action[c.compose(g, f)] == compose_fn(action[g], action[f])))
        throw ValidationError(ErrorKind::NotFunctorial, {c.morphism_id(g), c.morphism_id(f)}, "concrete " + name);
  for (ObjectIndex a = 0; a < c.object_count(); ++a)
    for (ObjectIndex b = 0; b < c.object_count(); ++b) {
      const auto& hom = c.hom(a, b);
      for (std::size_t i = 0; i < hom.size(); ++i)
        for (std::size_t j = i + 1; j < hom.size(); ++j) {
          if (!(action[hom[i]] == action[hom[j]])) continue;
          ValidationError err(ErrorKind::NotFaithful, {c.morphism_id(hom[i]), c.morphism_id(hom[j])},
                              "concrete " + name);
          if (!options.allow_unfaithful) throw err;
          if (options.warnings) options.warnings->push_back(err.what());
        }
    }
  return ConcreteStructure(std::move(name), std::move(over), std::move(carrier), std::move(action));
}

ConcreteStructure validate_concrete(const RawConcrete& raw, CatRef over, ConcreteOptions options) {
  const FinCat& c = *over;
  if (!raw.over.empty() && raw.over != c.name())
    throw ValidationError(ErrorKind::SourceTargetMismatch, {raw.over, c.name()}, "concrete " + raw.name);
  std::vector<std::optional<FinSetObj>> carrier(c.object_count());
  for (const auto& [obj, elements] : raw.carriers) {
    const ObjectIndex x = c.object_index(obj);
    if (carrier[x]) throw ValidationError(ErrorKind::DuplicateId, {obj}, "carrier given twice");
    carrier[x] = make_finset(obj, elements);
  }
  std::vector<FinSetObj> sets;
  for (ObjectIndex x = 0; x < c.object_count(); ++x) {
    if (!carrier[x]) throw ValidationError(ErrorKind::UnmappedObject, {c.object_id(x)}, "no carrier");
    sets.push_back(std::move(*carrier[x]));
  }
  std::vector<std::optional<FinFn>> action(c.morphism_count());
  for (const auto& [mor, pairs] : raw.actions) {
    const MorphismIndex m = c.morphism_index(mor);
    if (action[m]) throw ValidationError(ErrorKind::DuplicateId, {mor}, "function given twice");
    action[m] = make_fn(sets[c.dom(m)], sets[c.cod(m)], pairs, mor);
  }
  std::vector<FinFn> fns;
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (!action[m]) {
      if (!c.is_identity(m)) throw ValidationError(ErrorKind::UnmappedMorphism, {c.morphism_id(m)}, "no function");
      action[m] = identity_fn(sets[c.dom(m)]);
    }
    fns.push_back(std::move(*action[m]));
  }
  return make_concrete(raw.name, std::move(over), std::move(sets), std::move(fns), options);
}

RawConcrete to_raw(const ConcreteStructure& u) {
  RawConcrete raw{u.name(), u.over().name(), {}, {}};
  const FinCat& c = u.over();
  for (ObjectIndex x = 0; x < c.object_count(); ++x) raw.carriers.emplace_back(c.object_id(x), u.carrier(x).elements);
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    const FinFn& fn = u.action(m);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < fn.map.size(); ++i) pairs.emplace_back(fn.dom.elements[i], fn.cod.elements[fn.map[i]]);
    raw.actions.emplace_back(c.morphism_id(m), std::move(pairs));
  }
  return raw;
}

// ---------------------------------------------------------------------------

Pullback pullback_finset(const FinFn& f, const FinFn& g) {
  if (!(f.cod == g.cod)) throw ValidationError(ErrorKind::CodomainMismatch, {f.cod.id, g.cod.id});
  Pullback p{{"(" + f.dom.id + "," + g.dom.id + ")", {}}, {}, {}};
  std::vector<std::size_t> m1, m2;
  for (std::size_t a = 0; a < f.dom.size(); ++a)
    for (std::size_t b = 0; b < g.dom.size(); ++b)
      if (f.map[a] == g.map[b]) {
        p.object.elements.push_back("(" + f.dom.elements[a] + "," + g.dom.elements[b] + ")");
        m1.push_back(a);
        m2.push_back(b);
      }
  p.p1 = {p.object, f.dom, std::move(m1)};
  p.p2 = {p.object, g.dom, std::move(m2)};
  return p;
}

Square square_of(const Pullback& p, const FinFn& f, const FinFn& g) { return {p.object, p.p1, p.p2, f, g}; }

namespace {

// Calls visit(map) for every function from an n-set into an m-set.
template <class Visit>
bool for_each_map(std::size_t n, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> map(n, 0);
  if (n > 0 && m == 0) return true;
  for (;;) {
    if (!visit(map)) return false;
    std::size_t i = 0;
    while (i < n && ++map[i] == m) map[i++] = 0;
    if (i == n) return true;
  }
}

}  // namespace

UniversalResult verify_pullback_universal(const Square& sq, std::size_t probe) {
  const FinSetObj& A = sq.f.dom;
  const FinSetObj& B = sq.g.dom;
  if (!(sq.f.cod == sq.g.cod) || !(sq.p1.dom == sq.apex) || !(sq.p2.dom == sq.apex) || !(sq.p1.cod == A) ||
      !(sq.p2.cod == B))
    throw std::invalid_argument("verify_pullback_universal: ill-typed square");
  for (std::size_t e = 0; e < sq.apex.size(); ++e)
    if (sq.f.map[sq.p1.map[e]] != sq.g.map[sq.p2.map[e]])
      throw std::invalid_argument("verify_pullback_universal: square does not commute");

  std::optional<PullbackCounterexample> bad;
  for (std::size_t n = 0; n <= probe && !bad; ++n) {
    FinSetObj D{"D" + std::to_string(n), {}};
    for (std::size_t i = 0; i < n; ++i) D.elements.push_back("d" + std::to_string(i));
    for_each_map(n, A.size(), [&](const std::vector<std::size_t>& q1) {
      return for_each_map(n, B.size(), [&](const std::vector<std::size_t>& q2) {
        for (std::size_t d = 0; d < n; ++d)
          if (sq.f.map[q1[d]] != sq.g.map[q2[d]]) return true;  // not a cone
        // A mediating map is chosen pointwise, so the count is a product.
        std::size_t count = 1;
        for (std::size_t d = 0; d < n && count; ++d) {
          std::size_t here = 0;
          for (std::size_t e = 0; e < sq.apex.size(); ++e)
            here += sq.p1.map[e] == q1[d] && sq.p2.map[e] == q2[d];
          count *= here;
        }
        if (count == 1) return true;
        bad = PullbackCounterexample{D, {D, A, q1}, {D, B, q2}, count};
        return false;
      });
    });
  }
  if (bad) return *bad;
  return UniversalOk{};
}

}  // namespace basecat
