#include "basecat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <stdexcept>

#include "basecat/constructions.hpp"
#include "basecat/corpus.hpp"
#include "basecat/dsl.hpp"
#include "basecat/fibration.hpp"
#include "basecat/suites.hpp"

#ifndef BASECAT_CORPUS_DIR
#define BASECAT_CORPUS_DIR "corpus"
#endif

namespace basecat {
namespace {

/// Anything that maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// `name` or `head(arg,...)`.

struct Expr {
  std::string head;
  std::vector<Expr> args;
  bool call = false;
};

Expr parse_expr(std::string_view text, std::size_t& pos) {
  auto stop = [](char c) { return c == '(' || c == ')' || c == ',' || c == ' '; };
  Expr e;
  while (pos < text.size() && text[pos] == ' ') ++pos;
  while (pos < text.size() && !stop(text[pos])) e.head += text[pos++];
  if (e.head.empty()) throw UsageError("malformed expression '" + std::string(text) + "'");
  if (pos < text.size() && text[pos] == '(') {
    e.call = true;
    do {
      ++pos;
      e.args.push_back(parse_expr(text, pos));
      while (pos < text.size() && text[pos] == ' ') ++pos;
    } while (pos < text.size() && text[pos] == ',');
    if (pos >= text.size() || text[pos] != ')') throw UsageError("unbalanced expression '" + std::string(text) + "'");
    ++pos;
  }
  return e;
}

Expr parse_expr(std::string_view text) {
  std::size_t pos = 0;
  Expr e = parse_expr(text, pos);
  if (pos != text.size()) throw UsageError("trailing text in expression '" + std::string(text) + "'");
  return e;
}

const std::vector<std::string> kConstructions{"graph",         "concrete-graph", "left",         "right",
                                              "concrete-left", "concrete-right", "selfdual",     "grothendieck",
                                              "trans-groupoid", "op"};

// ---------------------------------------------------------------------------

struct Session {
  Library lib;
  SuiteOptions options;

  template <class Map>
  const typename Map::mapped_type& lookup(const Map& map, const Expr& e, const char* what) const {
    if (e.call) throw UsageError(std::string("expected a ") + what + " name, got an expression");
    auto it = map.find(e.head);
    if (it == map.end()) throw UsageError(std::string("no ") + what + " named '" + e.head + "'");
    return it->second;
  }

  void arity(const std::string& kind, const std::vector<Expr>& args, std::size_t lo, std::size_t hi) const {
    if (args.size() < lo || args.size() > hi)
      throw UsageError(kind + " takes " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                       " argument(s), got " + std::to_string(args.size()));
  }

  IsoWitness self_duality(const CatRef& c) const {
    if (options.witness == WitnessMode::Inverse) return groupoid_inverse_witness(c);
    auto r = find_isomorphism(c, std::make_shared<const FinCat>(opposite(*c)), options.budget);
    if (auto* w = std::get_if<IsoWitness>(&r)) return *w;
    throw ValidationError(ErrorKind::NoSelfDualWitness, {c->name()}, "no isomorphism to the opposite found");
  }

  /// Resolution errors throw UsageError; construction errors ValidationError.
  ConstructedCategory construct(const std::string& kind, const std::vector<Expr>& args) const {
    auto functor = [&](std::size_t i) -> const FinFunctor& { return lookup(lib.functors, args.at(i), "functor"); };
    auto concrete = [&](std::size_t i) -> const ConcreteStructure& {
      return lookup(lib.concretes, args.at(i), "concrete structure");
    };
    if (kind == "graph" || kind == "left" || kind == "right") {
      arity(kind, args, 1, 1);
      const FinFunctor& f = functor(0);
      return kind == "graph" ? graph_category(f) : kind == "left" ? abstract_left_action(f) : abstract_right_action(f);
    }
    if (kind == "concrete-graph" || kind == "concrete-left" || kind == "concrete-right") {
      arity(kind, args, 2, 2);
      const FinFunctor& f = functor(0);
      const ConcreteStructure& u = concrete(1);
      if (kind == "concrete-graph") return concrete_graph_category(f, u);
      return kind == "concrete-left" ? concrete_left_action(f, u) : concrete_right_action(f, u);
    }
    if (kind == "selfdual") {
      arity(kind, args, 1, 2);
      const FinFunctor& f = functor(0);
      const ConcreteStructure* u = args.size() == 2 ? &concrete(1) : nullptr;
      return right_action_selfdual(f, self_duality(f.source_ref()), u);
    }
    if (kind == "grothendieck") {
      arity(kind, args, 1, 1);
      return grothendieck_strict(lookup(lib.families, args[0], "indexed family"));
    }
    if (kind == "trans-groupoid") {
      arity(kind, args, 1, 1);
      return transformation_groupoid(lookup(lib.actions, args[0], "action"));
    }
    if (kind == "op") {
      arity(kind, args, 1, 1);
      if (!args[0].call) throw UsageError("op(...) of a declared category is a category, not a construction");
      return opposite(construct(args[0].head, args[0].args));
    }
    throw UsageError("unknown construction '" + kind + "'");
  }

  std::optional<ConstructedCategory> constructed(const Expr& e) const {
    if (!e.call || (e.head == "op" && e.args.size() == 1 && !e.args[0].call)) return std::nullopt;
    return construct(e.head, e.args);
  }

  CatRef category(const Expr& e) const {
    if (!e.call) return lookup(lib.categories, e, "category");
    if (e.head == "op" && e.args.size() == 1 && !e.args[0].call)
      return std::make_shared<const FinCat>(opposite(*category(e.args[0])));
    return construct(e.head, e.args).cat;
  }

  /// A declared functor, or the projection of a construction (kept in `c`).
  FunctorOver over(const Expr& e, std::optional<ConstructedCategory>& c) const {
    c = constructed(e);
    if (c) return FunctorOver::from(*c);
    return FunctorOver{lookup(lib.functors, e, "functor"), {}, {}};
  }
};

std::string counts(const FinCat& c) {
  return std::to_string(c.object_count()) + " objects, " + std::to_string(c.morphism_count()) + " morphisms";
}

std::string render_maps(const FinFunctor& f) {
  std::string out;
  for (ObjectIndex x = 0; x < f.source().object_count(); ++x)
    out += (x ? ", " : "") + f.source().object_id(x) + " |-> " + f.target().object_id(f.map_object(x));
  out += ";";
  for (MorphismIndex m = 0; m < f.source().morphism_count(); ++m)
    if (!f.source().is_identity(m))
      out += " " + f.source().morphism_id(m) + " |-> " + f.target().morphism_id(f.map_morphism(m)) + ",";
  if (out.back() == ',') out.pop_back();
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text)) throw UsageError("cannot write " + path);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

// ---------------------------------------------------------------------------

Report cmd_validate(const std::vector<std::string>& files) {
  Report r("validate " + join(files));
  for (const auto& path : files) {
    const Document doc = parse(read_text(path), path);
    Library lib;
    for (const auto& d : load(doc, lib)) {
      const std::string claim = "validate." + std::filesystem::path(path).filename().string() + "." + d.name;
      if (d.error)
        r.fail(claim, d.error->what());
      else
        r.pass(claim, std::string(to_string(d.kind)));
    }
  }
  return r;
}

Report cmd_construct(const Session& s, const std::string& kind, const std::vector<std::string>& inputs,
                     const std::string& out_file, const std::string& dot_file, const DotOptions& dot) {
  Report r("construct " + kind + " " + join(inputs));
  std::vector<Expr> args;
  for (const auto& in : inputs) args.push_back(parse_expr(in));
  const std::string claim = "construct." + kind;
  std::optional<ConstructedCategory> c;
  try {
    c = s.construct(kind, args);
  } catch (const ValidationError& e) {
    r.fail(claim, e.what());
    return r;
  }
  r.pass(claim, counts(*c->cat) + " over " + c->base().name());
  if (!out_file.empty()) {
    // Self-contained: base, total, projection.
    Document doc;
    doc.decls.push_back(declare(c->base()));
    doc.decls.push_back(declare(*c->cat));
    doc.decls.push_back(declare(c->projection));
    write_file(out_file, print(doc));
    r.pass("construct.out", "wrote " + out_file);
  }
  if (!dot_file.empty()) {
    write_file(dot_file, export_dot(*c, dot));
    r.pass("construct.dot", "wrote " + dot_file);
  }
  return r;
}

Report cmd_check(const Session& s, const std::string& kind, const std::vector<std::string>& inputs) {
  Report r("check " + kind + " " + join(inputs));
  const std::string claim = "check." + kind;
  auto need = [&](std::size_t n) {
    if (inputs.size() != n)
      throw UsageError("check " + kind + " takes " + std::to_string(n) + " input(s), got " +
                       std::to_string(inputs.size()));
  };
  try {
    if (kind == "iso") {
      need(2);
      const CatRef a = s.category(parse_expr(inputs[0])), b = s.category(parse_expr(inputs[1]));
      auto res = find_isomorphism(a, b, s.options.budget);
      if (auto* w = std::get_if<IsoWitness>(&res))
        r.pass(claim, render_maps(w->forward));
      else if (auto* no = std::get_if<NotIsomorphic>(&res))
        r.fail(claim, "not isomorphic: " + no->reason);
      else
        r.fail(claim, "budget exhausted after " + std::to_string(std::get<BudgetExhausted>(res).nodes) + " nodes");
      return r;
    }
    if (kind != "fibration" && kind != "opfibration" && kind != "split" && kind != "cartesian" &&
        kind != "opcartesian")
      throw UsageError("unknown check '" + kind + "'");
    const bool lift = kind == "cartesian" || kind == "opcartesian";
    need(lift ? 2 : 1);
    std::optional<ConstructedCategory> c;
    const FunctorOver p = s.over(parse_expr(inputs[0]), c);
    if (lift) {
      const auto f = p.total().find_morphism(inputs[1]);
      if (!f) throw UsageError("no morphism '" + inputs[1] + "' in " + p.total().name());
      const LiftCheck res =
          kind == "cartesian" ? is_cartesian(p, *f, s.options.budget) : is_opcartesian(p, *f, s.options.budget);
      if (auto* bad = std::get_if<LiftCounterexample>(&res))
        r.fail(claim, describe(p, *bad));
      else
        r.pass(claim, inputs[1] + " is " + kind);
      return r;
    }
    const LiftKind lk = kind == "opfibration" ? LiftKind::OpCartesian : LiftKind::Cartesian;
    const FibrationCheck found =
        lk == LiftKind::Cartesian ? check_fibration(p, s.options.budget) : check_opfibration(p, s.options.budget);
    if (auto* m = std::get_if<MissingLift>(&found)) {
      r.fail(claim, describe(p, *m));
      return r;
    }
    Cleavage cl = std::get<Cleavage>(found);
    if (kind != "split") {
      std::size_t lifts = 0;
      for (MorphismIndex l : cl.lift) lifts += l != kNoMorphism;
      r.pass(claim, std::to_string(lifts) + " lifts over " + p.base().name());
      return r;
    }
    std::string source = "first lifts";
    if (c) {
      try {
        cl = canonical_cleavage(*c, LiftKind::Cartesian);
        source = "canonical cleavage";
      } catch (const ValidationError&) {
        // the recipe leaves the choice open; keep the first lifts
      }
    }
    const auto valid = validate_cleavage(p, cl, s.options.budget);
    if (auto* d = std::get_if<CleavageDefect>(&valid)) {
      r.fail(claim, source + ": " + d->reason);
      return r;
    }
    const auto split = check_split(p, cl);
    if (auto* v = std::get_if<SplitViolation>(&split))
      r.fail(claim, source + ": " + describe(p, *v));
    else
      r.pass(claim, source + " is split");
  } catch (const ValidationError& e) {
    if (e.kind() == ErrorKind::UnknownMorphism || e.kind() == ErrorKind::UnknownObject) throw UsageError(e.what());
    r.fail(claim, e.what());
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite base-structured categories: constructions, fibration checks and verification suites",
               "basecat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human", corpus_dir = BASECAT_CORPUS_DIR, out_file, dot_file, witness = "inverse";
  std::vector<std::string> inputs;
  std::uint64_t seed = 7, budget = default_budget();
  app.add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--corpus", corpus_dir, "directory of .bcat fixtures");
  app.add_option("--input", inputs, "extra .bcat file, loaded after the corpus");
  app.add_option("--seed", seed, "seed for generated instances");
  app.add_option("--budget", budget, "search budget; default from BASECAT_BUDGET");
  app.add_option("--out", out_file, "write the constructed declaration (construct) or the report");
  app.add_option("--dot", dot_file, "write Graphviz DOT");

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "parse and validate .bcat files");
  validate->add_option("files", files, "input files")->required();

  std::string kind;
  std::vector<std::string> operands;
  DotOptions dot;
  auto* construct = app.add_subcommand("construct", "build a category from declared inputs");
  construct->add_option("kind", kind, "construction")->required()->check(CLI::IsMember(kConstructions));
  construct->add_option("inputs", operands, "declared names or expressions");
  construct->add_flag("--identities", dot.show_identities, "draw identities in DOT output");
  construct->add_flag("--cluster", dot.cluster_by_fibre, "cluster DOT output by fibre");

  auto* check = app.add_subcommand("check", "fibration, lift, split and isomorphism checks");
  check->add_option("kind", kind, "fibration|opfibration|cartesian|opcartesian|split|iso")
      ->required()
      ->check(CLI::IsMember({"fibration", "opfibration", "cartesian", "opcartesian", "split", "iso"}));
  check->add_option("inputs", operands, "expression, then a morphism id or second expression");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite over the corpus");
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--witness", witness, "self-duality witness: inverse or search")
      ->check(CLI::IsMember({"inverse", "search"}));

  std::string expr;
  auto* exporter = app.add_subcommand("export", "write a category as Graphviz DOT");
  exporter->add_option("expr", expr, "declared category or construction")->required();
  exporter->add_flag("--identities", dot.show_identities, "draw identities");
  exporter->add_flag("--cluster", dot.cluster_by_fibre, "cluster by fibre");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  auto emit = [&](const Report& r) {
    const std::string text = format == "machine" ? r.machine() : r.human();
    out << text;
    return r.exit_code();
  };

  try {
    if (validate->parsed()) return emit(cmd_validate(files));

    Session s;
    s.options.seed = seed;
    s.options.budget = budget;
    s.options.witness = witness == "search" ? WitnessMode::Search : WitnessMode::Inverse;

    if (verify->parsed()) {
      const Corpus corpus = load_corpus(corpus_dir);
      Report r = run_suite(suite, corpus, s.options);
      if (!out_file.empty()) write_file(out_file, r.machine());
      return emit(r);
    }

    std::vector<std::filesystem::path> paths;
    if (std::filesystem::is_directory(corpus_dir))
      for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".bcat") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    paths.insert(paths.end(), inputs.begin(), inputs.end());
    Corpus corpus = load_files(paths);
    for (const auto& d : corpus.defects)
      err << "warning: " << d.file << ": " << d.result.name << ": " << d.result.error->what() << "\n";
    s.lib = std::move(corpus.lib);

    if (construct->parsed()) return emit(cmd_construct(s, kind, operands, out_file, dot_file, dot));
    if (check->parsed()) {
      Report r = cmd_check(s, kind, operands);
      if (!out_file.empty()) write_file(out_file, r.machine());
      return emit(r);
    }
    // export
    const Expr e = parse_expr(expr);
    const auto c = s.constructed(e);
    const std::string text = c ? export_dot(*c, dot) : export_dot(*s.category(e), dot);
    if (dot_file.empty()) {
      out << text;
      return kExitPass;
    }
    write_file(dot_file, text);
    Report r("export " + expr);
    r.pass("export.dot", "wrote " + dot_file);
    return emit(r);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace basecat
