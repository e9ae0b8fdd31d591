#include "basecat/suites.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "basecat/constructions.hpp"
#include "basecat/fibration.hpp"

namespace basecat {
namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  bool skipped = false;
};

void claim(Report& r, const std::string& id, const std::function<Outcome()>& body) {
  try {
    Outcome o = body();
    r.add(id, o.skipped ? Status::Skip : o.ok ? Status::Pass : Status::Fail, std::move(o.detail));
  } catch (const std::exception& e) {
    r.fail(id, e.what());
  }
}

std::string counts(const FinCat& c) {
  return std::to_string(c.object_count()) + " objects, " + std::to_string(c.morphism_count()) + " morphisms";
}

bool is_groupoid(const FinCat& c) {
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m)
    if (!c.inverse(m)) return false;
  return true;
}

bool same_base(const FinCat& a, const FinCat& b) { return a.name() == b.name() && same_presentation(a, b); }

// ---------------------------------------------------------------------------
// Instances.

struct Pair {
  const FinFunctor* f;
  const ConcreteStructure* u;
  std::string name;
};

std::vector<Pair> corpus_pairs(const Library& lib) {
  std::vector<Pair> out;
  for (const auto& [fname, f] : lib.functors)
    for (const auto& [uname, u] : lib.concretes)
      if (same_base(u.over(), f.target())) out.push_back({&f, &u, fname + "/" + uname});
  return out;
}

struct RandomInstance {
  FinFunctor f;  // C -> D
  ConcreteStructure u;  // over D
};

// Suites draw from separate streams so each one sees the same instances alone
// or inside `all`.
std::vector<RandomInstance> random_instances(const SuiteOptions& o, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::vector<RandomInstance> out;
  for (std::size_t k = 0; out.size() < o.random_instances; ++k) {
    const std::string tag = "rand" + std::to_string(k);
    RandomConcrete c = random_concrete(rng, tag + "_src", o.bounds);
    RandomConcrete d = random_concrete(rng, tag + "_tgt", o.bounds);
    if (auto f = random_functor(rng, c.cat, d.cat, tag, o.budget)) out.push_back({std::move(*f), std::move(d.u)});
  }
  return out;
}

std::string pair_name(const RandomInstance& r) { return r.f.name() + "/" + r.u.name(); }

std::optional<IsoWitness> self_duality(const CatRef& c, const SuiteOptions& o) {
  if (o.witness == WitnessMode::Inverse) {
    if (!is_groupoid(*c)) return std::nullopt;
    return groupoid_inverse_witness(c);
  }
  auto op = std::make_shared<const FinCat>(opposite(*c));
  auto r = find_isomorphism(c, op, o.budget);
  if (auto* w = std::get_if<IsoWitness>(&r)) return *w;
  return std::nullopt;
}

std::string printed(const FinCat& c) { return print(declare(normalize(c))); }

std::string first_difference(const std::string& a, const std::string& b) {
  std::size_t line = 1, i = 0;
  for (; i < a.size() && i < b.size() && a[i] == b[i]; ++i) line += a[i] == '\n';
  return "presentations differ at line " + std::to_string(line);
}

Outcome coverage(std::size_t have, std::size_t need, const std::string& what) {
  return {have >= need, std::to_string(have) + " " + what + " (floor " + std::to_string(need) + ")"};
}

// ---------------------------------------------------------------------------

Outcome fibration_with(const FunctorOver& p, const ConstructedCategory& c, LiftKind kind, std::uint64_t budget) {
  const bool cart = kind == LiftKind::Cartesian;
  FibrationCheck found = cart ? check_fibration(p, budget) : check_opfibration(p, budget);
  if (auto* m = std::get_if<MissingLift>(&found)) return {false, describe(p, *m)};
  Cleavage k = canonical_cleavage(c, kind);
  const auto valid = validate_cleavage(p, k, budget);
  if (auto* d = std::get_if<CleavageDefect>(&valid))
    return {false, "canonical " + std::string(cart ? "cleavage" : "opcleavage") + ": " + d->reason};
  return {true, "every lift exists; canonical choice is " + std::string(cart ? "cartesian" : "opcartesian")};
}

Outcome split_with(const FunctorOver& p, const ConstructedCategory& c, LiftKind kind) {
  Cleavage k = canonical_cleavage(c, kind);
  auto s = check_split(p, k);
  if (auto* v = std::get_if<SplitViolation>(&s)) return {false, describe(p, *v)};
  return {true, "identity and composition laws hold"};
}

void prop2_checks(Report& r, const std::string& inst, const FinFunctor& f, const SuiteOptions& o) {
  std::optional<ConstructedCategory> g;
  claim(r, "prop2." + inst + ".graph", [&] {
    g = graph_category(f);
    return Outcome{true, counts(*g->cat)};
  });
  if (!g) return;
  const FunctorOver p = FunctorOver::from(*g);
  claim(r, "prop2." + inst + ".fibration", [&] { return fibration_with(p, *g, LiftKind::Cartesian, o.budget); });
  claim(r, "prop2." + inst + ".split", [&] { return split_with(p, *g, LiftKind::Cartesian); });
  claim(r, "prop2." + inst + ".opfibration", [&] { return fibration_with(p, *g, LiftKind::OpCartesian, o.budget); });
  claim(r, "prop2." + inst + ".opsplit", [&] { return split_with(p, *g, LiftKind::OpCartesian); });
}

void prop3_checks(Report& r, const std::string& inst, const FinFunctor& f, const ConcreteStructure& u,
                  const SuiteOptions& o) {
  std::optional<ConstructedCategory> g;
  claim(r, "prop3." + inst + ".graph", [&] {
    g = concrete_graph_category(f, u);
    return Outcome{true, counts(*g->cat)};
  });
  if (!g) return;
  const FunctorOver p = FunctorOver::from(*g);
  claim(r, "prop3." + inst + ".opfibration", [&] { return fibration_with(p, *g, LiftKind::OpCartesian, o.budget); });
  claim(r, "prop3." + inst + ".opsplit", [&] { return split_with(p, *g, LiftKind::OpCartesian); });
}

// Exhaustive lemma scan on one fibration.
void appendix_checks(Report& r, const std::string& inst, const FunctorOver& p, const SuiteOptions& o,
                     std::size_t& scanned, std::size_t& skipped) {
  std::optional<Cleavage> c;
  std::string missing;
  claim(r, "appendixC." + inst + ".fibration", [&] {
    auto found = check_fibration(p, o.budget);
    if (auto* m = std::get_if<MissingLift>(&found)) {
      missing = describe(p, *m);
      return Outcome{true, "not a fibration: " + missing, true};
    }
    c = std::get<Cleavage>(found);
    return Outcome{true, counts(p.total()) + " over " + p.base().name()};
  });
  if (!missing.empty()) {
    for (const char* lemma : {".factorization", ".compose", ".iso"})
      r.skip("appendixC." + inst + lemma, "not a fibration");
    ++skipped;
  }
  if (!c) return;
  ++scanned;
  claim(r, "appendixC." + inst + ".factorization", [&] {
    const FinCat& e = p.total();
    for (MorphismIndex g = 0; g < e.morphism_count(); ++g) {
      const MorphismIndex f = c->at(p.proj.map_morphism(g), e.cod(g));
      std::vector<MorphismIndex> vertical;
      for (MorphismIndex h = 0; h < e.morphism_count(); ++h)
        if (p.vertical(h) && e.cod(h) == e.dom(f) && e.dom(h) == e.dom(g) && e.compose(f, h) == g)
          vertical.push_back(h);
      if (vertical.size() != 1)
        return Outcome{false, e.morphism_id(g) + " has " + std::to_string(vertical.size()) +
                                  " vertical factors through " + e.morphism_id(f)};
      const Factorization fz = factor_vertical_cartesian(p, *c, g);
      if (fz.h != vertical[0] || fz.f != f)
        return Outcome{false, "factor_vertical_cartesian disagrees with the scan at " + e.morphism_id(g)};
    }
    return Outcome{true, std::to_string(e.morphism_count()) + " morphisms factor uniquely"};
  });
  claim(r, "appendixC." + inst + ".compose", [&] {
    auto res = property_cartesian_compose(p, o.budget);
    if (auto* bad = std::get_if<PropertyCounterexample>(&res)) return Outcome{false, describe(p, *bad)};
    return Outcome{true, "cartesian morphisms closed under composition"};
  });
  claim(r, "appendixC." + inst + ".iso", [&] {
    auto res = property_cartesian_over_iso(p, o.budget);
    if (auto* bad = std::get_if<PropertyCounterexample>(&res)) return Outcome{false, describe(p, *bad)};
    return Outcome{true, "cartesian lifts of isomorphisms are isomorphisms"};
  });
}

void grothendieck_check(Report& r, const std::string& inst, const std::function<IndexedFamily()>& make) {
  claim(r, "grothendieck." + inst + ".roundtrip", [&] {
    const IndexedFamily fam = make();
    const ConstructedCategory t = grothendieck_strict(fam);
    const FunctorOver p = FunctorOver::from(t);
    const Cleavage c = canonical_cleavage(t, LiftKind::Cartesian);
    const auto split = check_split(p, c);
    if (auto* v = std::get_if<SplitViolation>(&split)) return Outcome{false, describe(p, *v)};
    const IndexedFamily back = recover_indexed(p, c);
    const ConstructedCategory t2 = grothendieck_strict(back);
    if (!same_presentation(normalize(*t2.cat), normalize(*t.cat)))
      return Outcome{false, counts(*t2.cat) + " recovered vs " + counts(*t.cat)};
    return Outcome{true, counts(*t.cat) + " over " + fam.base->name()};
  });
}

}  // namespace

// ---------------------------------------------------------------------------

Report suite_prop2(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify prop2");
  std::size_t n = 0;
  for (const auto& [name, f] : corpus.lib.functors) prop2_checks(r, name, f, o), ++n;
  for (const auto& inst : random_instances(o, 2)) prop2_checks(r, inst.f.name(), inst.f, o), ++n;
  claim(r, "prop2.coverage", [&] { return coverage(n, kProp2MinFunctors, "functors"); });
  return r;
}

Report suite_prop3(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify prop3");
  std::size_t n = 0;
  for (const auto& p : corpus_pairs(corpus.lib)) prop3_checks(r, p.name, *p.f, *p.u, o), ++n;
  for (const auto& inst : random_instances(o, 3)) prop3_checks(r, pair_name(inst), inst.f, inst.u, o), ++n;
  claim(r, "prop3.coverage", [&] { return coverage(n, kProp3MinPairs, "functor/structure pairs"); });
  return r;
}

Report suite_prop4(const Corpus& corpus, const SuiteOptions&) {
  Report r("verify prop4");
  for (const auto& [name, act] : corpus.lib.actions) {
    std::optional<Prop4Result> res;
    claim(r, "prop4." + name + ".witness", [&] {
      res = verify_prop4(act);
      validate_iso(res->witness);
      return Outcome{true, counts(*res->groupoid.cat) + " on both sides"};
    });
    if (!res) continue;
    claim(r, "prop4." + name + ".count", [&] {
      const FinCat& g = *res->groupoid.cat;
      const std::size_t expected = act.group->morphism_count() * act.carrier.size();
      std::set<std::pair<std::string, std::string>> want, have;
      for (const auto& m : act.group->morphisms())
        for (const auto& x : act.carrier.elements) want.emplace(m.id, x);
      for (const auto& l : res->groupoid.morphism_labels) have.emplace(l.first, l.second);
      const std::string detail = std::to_string(g.morphism_count()) + " = " +
                                 std::to_string(act.group->morphism_count()) + "*" +
                                 std::to_string(act.carrier.size());
      const bool ok = g.morphism_count() == expected && res->right_action.cat->morphism_count() == expected &&
                      have == want;
      return Outcome{ok, ok ? detail : detail + " does not match the enumeration of G x X"};
    });
    claim(r, "prop4." + name + ".groupoid", [&] {
      return Outcome{is_groupoid(*res->groupoid.cat), "every (g,x) has a two-sided inverse"};
    });
  }
  return r;
}

Report suite_main(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify main");
  std::size_t groupoids = 0, with_leg = 0;
  auto run = [&](const std::string& inst, const FinFunctor& f, const ConcreteStructure* u) {
    std::optional<IsoWitness> w;
    claim(r, "main." + inst + ".witness", [&] {
      w = self_duality(f.source_ref(), o);
      return Outcome{true, w ? "self-dual via " + w->forward.name() : "no self-duality used"};
    });
    const Report sub = verify_main_prop(f, u, w ? &*w : nullptr);
    bool leg = false;
    for (const auto& e : sub.entries()) {
      const std::string leaf = e.claim.rfind("main.", 0) == 0 ? e.claim.substr(5) : e.claim;
      r.add("main." + inst + "." + leaf, e.status, e.detail);
      leg = leg || (leaf == "ii.selfdual" && e.status == Status::Pass);
    }
    if (is_groupoid(f.source())) ++groupoids, with_leg += leg;
  };
  for (const auto& [name, f] : corpus.lib.functors) {
    bool any = false;
    for (const auto& p : corpus_pairs(corpus.lib))
      if (p.f == &f) run(p.name, f, p.u), any = true;
    if (!any) run(name, f, nullptr);
  }
  for (const auto& [name, act] : corpus.lib.actions) {
    const ActionFunctor af = action_as_functor(act);
    run("action(" + name + ")", af.functor, &af.underlying);
  }
  for (const auto& inst : random_instances(o, 4)) run(pair_name(inst), inst.f, &inst.u);
  claim(r, "main.coverage", [&] {
    return Outcome{groupoids > 0 && with_leg == groupoids,
                   std::to_string(with_leg) + " of " + std::to_string(groupoids) +
                       " groupoid-sourced instances include the self-dual leg"};
  });
  return r;
}

Report suite_duality(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify duality");
  auto abstract = [&](const std::string& inst, const FinFunctor& f) {
    claim(r, "duality." + inst + ".abstract", [&] {
      const std::string a = printed(*opposite(abstract_right_action(f)).cat);
      const std::string b = printed(*abstract_left_action(f).cat);
      return a == b ? Outcome{true, "identical after normalization"} : Outcome{false, first_difference(a, b)};
    });
  };
  auto concrete = [&](const std::string& inst, const FinFunctor& f, const ConcreteStructure& u) {
    claim(r, "duality." + inst + ".concrete", [&] {
      const std::string a = printed(*opposite(concrete_right_action(f, u)).cat);
      const std::string b = printed(*concrete_left_action(f, u).cat);
      return a == b ? Outcome{true, "identical after normalization"} : Outcome{false, first_difference(a, b)};
    });
  };
  for (const auto& [name, f] : corpus.lib.functors) abstract(name, f);
  for (const auto& p : corpus_pairs(corpus.lib)) concrete(p.name, *p.f, *p.u);
  for (const auto& inst : random_instances(o, 5)) {
    abstract(inst.f.name(), inst.f);
    concrete(pair_name(inst), inst.f, inst.u);
  }
  return r;
}

Report suite_appendix_c(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify appendixC");
  std::size_t scanned = 0, skipped = 0;
  auto over = [&](const std::string& inst, const std::function<ConstructedCategory()>& make) {
    std::optional<ConstructedCategory> c;
    claim(r, "appendixC." + inst + ".build", [&] {
      c = make();
      return Outcome{true, counts(*c->cat)};
    });
    if (c) appendix_checks(r, inst, FunctorOver::from(*c), o, scanned, skipped);
  };
  const Library& lib = corpus.lib;
  for (const auto& [name, f] : lib.functors) appendix_checks(r, name, FunctorOver{f, {}, {}}, o, scanned, skipped);
  for (const auto& [name, f] : lib.functors) over("graph(" + name + ")", [&] { return graph_category(f); });
  for (const auto& p : corpus_pairs(lib))
    over("concrete-graph(" + p.name + ")", [&] { return concrete_graph_category(*p.f, *p.u); });
  for (const auto& [name, fam] : lib.families) over("grothendieck(" + name + ")", [&] { return grothendieck_strict(fam); });
  for (const auto& [name, act] : lib.actions)
    over("trans-groupoid(" + name + ")", [&] { return transformation_groupoid(act); });
  for (const auto& inst : random_instances(o, 6)) {
    over("graph(" + inst.f.name() + ")", [&] { return graph_category(inst.f); });
    over("concrete-graph(" + pair_name(inst) + ")", [&] { return concrete_graph_category(inst.f, inst.u); });
  }
  claim(r, "appendixC.coverage", [&] {
    return Outcome{scanned > 0, std::to_string(scanned) + " fibrations scanned, " + std::to_string(skipped) +
                                    " non-fibrations skipped"};
  });
  return r;
}

Report suite_grothendieck(const Corpus& corpus, const SuiteOptions& o) {
  Report r("verify grothendieck");
  std::size_t n = 0;
  const Library& lib = corpus.lib;
  for (const auto& [name, fam] : lib.families) grothendieck_check(r, name, [&] { return fam; }), ++n;
  for (const auto& [name, f] : lib.functors)
    grothendieck_check(r, "trivial(" + name + ")", [&] { return trivial_family(f); }), ++n;
  for (const auto& p : corpus_pairs(lib))
    grothendieck_check(r, "discrete(" + p.name + ")", [&] { return discrete_family(*p.f, *p.u); }), ++n;
  for (const auto& inst : random_instances(o, 7))
    grothendieck_check(r, "discrete(" + pair_name(inst) + ")", [&] { return discrete_family(inst.f, inst.u); }), ++n;
  claim(r, "grothendieck.coverage", [&] { return coverage(n, kGrothendieckMinFamilies, "strict families"); });
  return r;
}

Report suite_pullback(const Corpus&, const SuiteOptions& o) {
  Report r("verify pullback");
  claim(r, "pullback.figure.elements", [&] {
    const FinSetObj a = make_finset("A", {"a1", "a2"}), b = make_finset("B", {"b1", "b2", "b3"}),
                    c = make_finset("C", {"c1", "c2"});
    const FinFn f = make_fn(a, c, {{"a1", "c1"}, {"a2", "c2"}}, "f");
    const FinFn g = make_fn(b, c, {{"b1", "c1"}, {"b2", "c1"}, {"b3", "c2"}}, "g");
    const Pullback pb = pullback_finset(f, g);
    const std::vector<std::string> want{"(a1,b1)", "(a1,b2)", "(a2,b3)"};
    std::string got;
    for (const auto& e : pb.object.elements) got += (got.empty() ? "" : " ") + e;
    if (pb.object.elements != want) return Outcome{false, "got " + got};
    const bool universal = std::holds_alternative<UniversalOk>(verify_pullback_universal(square_of(pb, f, g), 3));
    return Outcome{universal, got + (universal ? "; universal for probes up to 3" : "; universal property fails")};
  });

  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32), 8u};
  std::mt19937_64 rng(seq);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto set = [](const std::string& id, std::size_t n) {
    FinSetObj s{id, {}};
    for (std::size_t i = 0; i < n; ++i) s.elements.push_back(id + std::to_string(i));
    return s;
  };
  std::string count_fail, universal_fail;
  for (std::size_t k = 0; k < o.pullback_squares; ++k) {
    const FinSetObj a = set("a", pick(0, o.pullback_max_set)), b = set("b", pick(0, o.pullback_max_set)),
                    c = set("c", pick(1, o.pullback_max_set));
    FinFn f{a, c, {}}, g{b, c, {}};
    for (std::size_t i = 0; i < a.size(); ++i) f.map.push_back(pick(0, c.size() - 1));
    for (std::size_t i = 0; i < b.size(); ++i) g.map.push_back(pick(0, c.size() - 1));
    const Pullback pb = pullback_finset(f, g);
    std::size_t formula = 0;
    for (std::size_t z = 0; z < c.size(); ++z)
      formula += static_cast<std::size_t>(std::count(f.map.begin(), f.map.end(), z) *
                                          std::count(g.map.begin(), g.map.end(), z));
    if (pb.object.size() != formula && count_fail.empty())
      count_fail = "square " + std::to_string(k) + ": |P| = " + std::to_string(pb.object.size()) + ", formula " +
                   std::to_string(formula);
    if (!std::holds_alternative<UniversalOk>(verify_pullback_universal(square_of(pb, f, g), o.pullback_probe)) &&
        universal_fail.empty())
      universal_fail = "square " + std::to_string(k) + " has a cone without a unique mediating map";
  }
  const std::string squares = std::to_string(o.pullback_squares) + " random squares, sets up to " +
                              std::to_string(o.pullback_max_set) + " elements";
  claim(r, "pullback.random.count", [&] { return Outcome{count_fail.empty(), count_fail.empty() ? squares : count_fail}; });
  claim(r, "pullback.random.universal", [&] {
    return Outcome{universal_fail.empty(), universal_fail.empty()
                                               ? squares + ", probes up to " + std::to_string(o.pullback_probe)
                                               : universal_fail};
  });
  return r;
}

Report suite_parser(const Corpus& corpus, const SuiteOptions&) {
  Report r("verify parser");
  for (const auto& file : corpus.files) {
    const std::string name = std::filesystem::path(file.path).filename().string();
    claim(r, "parser." + name + ".roundtrip", [&] {
      const bool ok = parse(print(file.doc), file.path) == file.doc;
      return Outcome{ok, std::to_string(file.doc.decls.size()) + " declarations"};
    });
    claim(r, "parser." + name + ".deletions", [&] {
      std::vector<std::size_t> line_length{0};
      for (char ch : file.text) ch == '\n' ? line_length.push_back(0) : void(++line_length.back());
      const auto tokens = token_offsets(file.text);
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        std::string cut = file.text;
        cut.erase(tokens[t].first, tokens[t].second);
        try {
          parse(cut, file.path);
        } catch (const ParseError& e) {
          const SourceSpan& s = e.span();
          if (s.line >= 1 && s.line <= line_length.size() && s.column >= 1 &&
              s.column <= line_length[s.line - 1] + 1)
            continue;
          return Outcome{false, "deleting token " + std::to_string(t) + " reports a span outside the file"};
        }
        return Outcome{false, "deleting token " + std::to_string(t) + " (\"" +
                                  file.text.substr(tokens[t].first, tokens[t].second) + "\") still parses"};
      }
      return Outcome{true, std::to_string(tokens.size()) + " deletions, each rejected inside the file"};
    });
  }
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"prop2",        "prop3",    "prop4",  "main", "duality", "appendixC",
                                              "grothendieck", "pullback", "parser", "all"};
  return names;
}

Report run_suite(std::string_view name, const Corpus& corpus, const SuiteOptions& options) {
  using Suite = Report (*)(const Corpus&, const SuiteOptions&);
  static const std::vector<std::pair<std::string_view, Suite>> table{
      {"prop2", suite_prop2},         {"prop3", suite_prop3},       {"prop4", suite_prop4},
      {"main", suite_main},           {"duality", suite_duality},   {"appendixC", suite_appendix_c},
      {"grothendieck", suite_grothendieck}, {"pullback", suite_pullback}, {"parser", suite_parser}};
  Report r("verify " + std::string(name));
  for (const auto& d : corpus.defects)
    r.fail("corpus." + std::filesystem::path(d.file).filename().string() + "." + d.result.name,
           d.result.error ? d.result.error->what() : "invalid");
  bool known = false;
  for (const auto& [id, suite] : table)
    if (name == "all" || name == id) {
      r.append(suite(corpus, options));
      known = true;
    }
  if (!known) throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  return r;
}

}  // namespace basecat
