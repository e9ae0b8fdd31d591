#include "basecat/dsl.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <set>
#include <sstream>

namespace basecat {

namespace {

constexpr std::array<std::string_view, 15> kKeywords{"category", "functor", "concrete", "action", "indexed",
                                                     "over",     "objects", "arrows",   "identities", "compose",
                                                     "group",    "set",     "phi",      "fibre",  "pull"};

bool is_keyword(std::string_view s) { return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end(); }

bool ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '*' ||
         c == '\'';
}

enum class Tok { Ident, LBrace, RBrace, Colon, Comma, Arrow, MapsTo, Dot, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run(std::vector<std::pair<std::size_t, std::size_t>>* offsets = nullptr) {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      const std::size_t start = pos_;
      out.push_back(next());
      if (offsets) offsets->emplace_back(start, pos_ - start);
    }
    SourceSpan end = out.empty() ? SourceSpan{file_, 1, 1, 1} : out.back().span;
    out.push_back({Tok::End, "", end});
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void bad(std::string expected, std::size_t line, std::size_t col) {
    const std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(ParseError::Kind::Syntax, {file_, line, col, 1}, std::move(expected), found);
  }

  Token next() {
    const std::size_t line = line_, col = col_, start = pos_;
    auto make = [&](Tok k) {
      return Token{k, std::string(text_.substr(start, pos_ - start)), {file_, line, col, pos_ - start}};
    };
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      advance();
      return make(k);
    };
    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case ':': return single(Tok::Colon);
      case ',': return single(Tok::Comma);
      case '.': return single(Tok::Dot);
      case '=': return single(Tok::Equals);
      default: break;
    }
    if (c == '-') {
      advance();
      if (pos_ >= text_.size() || text_[pos_] != '>') bad("'->'", line, col);
      advance();
      return make(Tok::Arrow);
    }
    if (c == '|') {
      advance();
      if (text_.substr(pos_, 2) != "->") bad("'|->'", line, col);
      advance();
      advance();
      return make(Tok::MapsTo);
    }
    if (ident_char(c) || c == '(') {
      // Runs of identifier characters and balanced parenthesised groups.
      while (pos_ < text_.size()) {
        if (ident_char(text_[pos_])) {
          advance();
        } else if (text_[pos_] == '(') {
          int depth = 0;
          const std::size_t open_line = line_, open_col = col_;
          do {
            const char d = text_[pos_];
            if (d == '(') ++depth;
            else if (d == ')') --depth;
            else if (!ident_char(d) && d != ',') bad("identifier character, ',' or ')'", line_, col_);
            advance();
          } while (depth > 0 && pos_ < text_.size());
          if (depth > 0) {
            pos_ = text_.size();
            bad("')'", open_line, open_col);
          }
        } else {
          break;
        }
      }
      return make(Tok::Ident);
    }
    bad("a token", line, col);
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct Ref {
  std::string id;
  SourceSpan span;
};

struct IdTok {
  std::string id;
  SourceSpan span;
};

// Objects and morphisms (declared, synthesized identities included) of a raw category.
struct Names {
  std::set<std::string> objects, morphisms;
  std::map<std::string, std::pair<std::string, std::string>> ends;  // morphism -> (dom, cod)
};

Names names_of(const RawCategory& raw) {
  Names n;
  n.objects.insert(raw.objects.begin(), raw.objects.end());
  for (const auto& a : raw.arrows) {
    n.morphisms.insert(a.id);
    n.ends[a.id] = {a.dom, a.cod};
  }
  std::set<std::string> explicit_id;
  for (const auto& [obj, id] : raw.identities) {
    explicit_id.insert(obj);
    n.morphisms.insert(id);
    n.ends[id] = {obj, obj};
  }
  for (const auto& obj : raw.objects)
    if (!explicit_id.count(obj)) {
      n.morphisms.insert(default_identity_id(obj));
      n.ends[default_identity_id(obj)] = {obj, obj};
    }
  return n;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Document run() {
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (keyword_is(t, "category")) category();
      else if (keyword_is(t, "functor")) functor();
      else if (keyword_is(t, "concrete")) concrete();
      else if (keyword_is(t, "action")) action();
      else if (keyword_is(t, "indexed")) indexed();
      else fail(t, "'category', 'functor', 'concrete', 'action' or 'indexed'");
    }
    return std::move(doc_);
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  static bool keyword_is(const Token& t, std::string_view kw) { return t.kind == Tok::Ident && t.text == kw; }
  bool section(std::string_view kw) const { return keyword_is(peek(), kw) && peek(1).kind == Tok::Colon; }

  [[noreturn]] static void fail(const Token& t, std::string expected) {
    throw ParseError(ParseError::Kind::Syntax, t.span, std::move(expected), describe(t));
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(peek(), what);
    return take();
  }

  void keyword(std::string_view kw) {
    if (!keyword_is(peek(), kw)) fail(peek(), "'" + std::string(kw) + "'");
    take();
  }

  IdTok ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) fail(t, what);
    take();
    return {t.text, t.span};
  }

  bool comma() {
    if (peek().kind != Tok::Comma) return false;
    take();
    return true;
  }

  IdTok header(const char* kw) {
    const SourceSpan span = peek().span;
    keyword(kw);
    decl_span_ = span;
    return ident("declaration name");
  }

  void add(DeclBody body, const IdTok& name) {
    Declaration d{std::move(body), decl_span_};
    if (doc_.find(d.kind(), name.id))
      throw ParseError(ParseError::Kind::DuplicateDeclaration, name.span,
                       "a new " + std::string(to_string(d.kind())) + " name", "'" + name.id + "'");
    doc_.decls.push_back(std::move(d));
  }

  static void resolve(const std::set<std::string>& known, const std::vector<Ref>& refs, const std::string& what) {
    for (const auto& r : refs)
      if (!known.count(r.id)) throw ParseError(ParseError::Kind::UnresolvedReference, r.span, what, "'" + r.id + "'");
  }

  const RawCategory& category_ref(const IdTok& name) const {
    const Declaration* d = doc_.find(DeclKind::Category, name.id);
    if (!d) throw ParseError(ParseError::Kind::UnresolvedReference, name.span, "a declared category", "'" + name.id + "'");
    return std::get<RawCategory>(d->body);
  }

  void functor_ref(const IdTok& name) const {
    if (!doc_.find(DeclKind::Functor, name.id))
      throw ParseError(ParseError::Kind::UnresolvedReference, name.span, "a declared functor", "'" + name.id + "'");
  }

  // (a |-> b),* with 2-token lookahead; stops before anything else.
  std::vector<std::pair<IdTok, IdTok>> maps_to_list(bool allow_empty) {
    std::vector<std::pair<IdTok, IdTok>> out;
    if (allow_empty && !(peek().kind == Tok::Ident && peek(1).kind == Tok::MapsTo)) return out;
    do {
      IdTok a = ident("element or id");
      expect(Tok::MapsTo, "'|->'");
      IdTok b = ident("element or id");
      out.emplace_back(std::move(a), std::move(b));
    } while (comma());
    return out;
  }

  std::vector<IdTok> braced_set() {
    expect(Tok::LBrace, "'{'");
    std::vector<IdTok> out;
    if (peek().kind != Tok::RBrace) {
      do out.push_back(ident("element"));
      while (comma());
    }
    expect(Tok::RBrace, "',' or '}'");
    return out;
  }

  void category() {
    IdTok name = header("category");
    RawCategory raw;
    raw.name = name.id;
    std::vector<Ref> obj_refs, mor_refs;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (section("objects")) {
        take(), take();
        do raw.objects.push_back(ident("object id").id);
        while (comma());
      } else if (section("arrows")) {
        take(), take();
        do {
          IdTok id = ident("arrow id");
          expect(Tok::Colon, "':'");
          IdTok dom = ident("domain object");
          expect(Tok::Arrow, "'->'");
          IdTok cod = ident("codomain object");
          raw.arrows.push_back({id.id, dom.id, cod.id});
          obj_refs.push_back({dom.id, dom.span});
          obj_refs.push_back({cod.id, cod.span});
        } while (comma());
      } else if (section("identities")) {
        take(), take();
        do {
          IdTok obj = ident("object id");
          expect(Tok::Equals, "'='");
          IdTok id = ident("identity id");
          raw.identities.emplace_back(obj.id, id.id);
          obj_refs.push_back({obj.id, obj.span});
        } while (comma());
      } else if (section("compose")) {
        take(), take();
        do {
          IdTok g = ident("morphism id");
          expect(Tok::Dot, "'.'");
          IdTok f = ident("morphism id");
          expect(Tok::Equals, "'='");
          IdTok r = ident("morphism id");
          raw.compose.push_back({g.id, f.id, r.id});
          for (const auto* t : {&g, &f, &r}) mor_refs.push_back({t->id, t->span});
        } while (comma());
      } else {
        fail(peek(), "'objects:', 'arrows:', 'identities:', 'compose:' or '}'");
      }
    }
    take();
    const Names n = names_of(raw);
    resolve(n.objects, obj_refs, "an object of " + raw.name);
    resolve(n.morphisms, mor_refs, "a morphism of " + raw.name);
    add(std::move(raw), name);
  }

  void functor() {
    IdTok name = header("functor");
    expect(Tok::Colon, "':'");
    IdTok src = ident("source category");
    expect(Tok::Arrow, "'->'");
    IdTok tgt = ident("target category");
    const Names s = names_of(category_ref(src));
    const Names t = names_of(category_ref(tgt));
    RawFunctor raw{name.id, src.id, tgt.id, {}, {}};
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (section("objects") || section("arrows")) {
        const bool objects = peek().text == "objects";
        take(), take();
        for (auto& [a, b] : maps_to_list(false)) {
          resolve(objects ? s.objects : s.morphisms, {{a.id, a.span}},
                  std::string(objects ? "an object" : "a morphism") + " of " + src.id);
          resolve(objects ? t.objects : t.morphisms, {{b.id, b.span}},
                  std::string(objects ? "an object" : "a morphism") + " of " + tgt.id);
          (objects ? raw.objects : raw.arrows).emplace_back(a.id, b.id);
        }
      } else {
        fail(peek(), "'objects:', 'arrows:' or '}'");
      }
    }
    take();
    add(std::move(raw), name);
  }

  void concrete() {
    IdTok name = header("concrete");
    keyword("over");
    IdTok over = ident("category name");
    const Names n = names_of(category_ref(over));
    RawConcrete raw{name.id, over.id, {}, {}};
    std::vector<std::pair<IdTok, std::vector<std::pair<IdTok, IdTok>>>> fns;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (peek().kind != Tok::Ident || peek(1).kind != Tok::Colon) fail(peek(), "'X: { ... }', 'f: ...' or '}'");
      IdTok key = ident("object or morphism id");
      take();
      if (peek().kind == Tok::LBrace) {
        resolve(n.objects, {{key.id, key.span}}, "an object of " + over.id);
        std::vector<std::string> elems;
        for (auto& e : braced_set()) elems.push_back(e.id);
        raw.carriers.emplace_back(key.id, std::move(elems));
      } else {
        resolve(n.morphisms, {{key.id, key.span}}, "a morphism of " + over.id);
        fns.emplace_back(key, maps_to_list(true));
      }
    }
    take();
    auto carrier = [&](const std::string& obj) -> std::set<std::string> {
      for (const auto& [o, els] : raw.carriers)
        if (o == obj) return {els.begin(), els.end()};
      return {};
    };
    for (auto& [f, pairs] : fns) {
      const auto& [dom, cod] = n.ends.at(f.id);
      std::vector<std::pair<std::string, std::string>> out;
      for (auto& [a, b] : pairs) {
        resolve(carrier(dom), {{a.id, a.span}}, "an element of the carrier of " + dom);
        resolve(carrier(cod), {{b.id, b.span}}, "an element of the carrier of " + cod);
        out.emplace_back(a.id, b.id);
      }
      raw.actions.emplace_back(f.id, std::move(out));
    }
    add(std::move(raw), name);
  }

  void action() {
    IdTok name = header("action");
    RawAction raw{name.id, "", {}, {}};
    std::optional<IdTok> group;
    bool have_set = false;
    std::vector<std::pair<IdTok, std::vector<std::pair<IdTok, IdTok>>>> phis;
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (section("group") && !group) {
        take(), take();
        group = ident("group name");
      } else if (section("set") && !have_set) {
        take(), take();
        for (auto& e : braced_set()) raw.set.push_back(e.id);
        have_set = true;
      } else if (section("phi")) {
        take(), take();
        IdTok g = ident("group element");
        expect(Tok::Colon, "':'");
        phis.emplace_back(g, maps_to_list(true));
      } else {
        fail(peek(), "'group:', 'set:', 'phi:' or '}'");
      }
    }
    if (!group) fail(peek(), "'group:'");
    if (!have_set) fail(peek(), "'set:'");
    take();
    raw.group = group->id;
    const Names n = names_of(category_ref(*group));
    const std::set<std::string> elems(raw.set.begin(), raw.set.end());
    for (auto& [g, pairs] : phis) {
      resolve(n.morphisms, {{g.id, g.span}}, "a morphism of " + group->id);
      std::vector<std::pair<std::string, std::string>> out;
      for (auto& [a, b] : pairs) {
        resolve(elems, {{a.id, a.span}, {b.id, b.span}}, "an element of the set");
        out.emplace_back(a.id, b.id);
      }
      raw.phi.emplace_back(g.id, std::move(out));
    }
    add(std::move(raw), name);
  }

  void indexed() {
    IdTok name = header("indexed");
    keyword("over");
    IdTok base = ident("base category");
    const Names n = names_of(category_ref(base));
    RawIndexed raw{name.id, base.id, {}, {}};
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      if (keyword_is(peek(), "fibre")) {
        take();
        IdTok obj = ident("base object");
        expect(Tok::Equals, "'='");
        IdTok cat = ident("category name");
        resolve(n.objects, {{obj.id, obj.span}}, "an object of " + base.id);
        category_ref(cat);
        raw.fibres.emplace_back(obj.id, cat.id);
      } else if (keyword_is(peek(), "pull")) {
        take();
        IdTok mor = ident("base morphism");
        expect(Tok::Equals, "'='");
        IdTok fn = ident("functor name");
        resolve(n.morphisms, {{mor.id, mor.span}}, "a morphism of " + base.id);
        functor_ref(fn);
        raw.pulls.emplace_back(mor.id, fn.id);
      } else {
        fail(peek(), "'fibre', 'pull' or '}'");
      }
    }
    take();
    add(std::move(raw), name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Document doc_;
  SourceSpan decl_span_;
};

// ---------------------------------------------------------------------------
// Printing.

bool printable(std::string_view id) {
  if (id.empty() || is_keyword(id)) return false;
  int depth = 0;
  for (char c : id) {
    if (c == '(') ++depth;
    else if (c == ')') {
      if (--depth < 0) return false;
    } else if (c == ',') {
      if (depth == 0) return false;
    } else if (!ident_char(c)) {
      return false;
    }
  }
  return depth == 0;
}

const std::string& id(const std::string& s) {
  if (!printable(s)) throw std::invalid_argument("identifier cannot be printed: '" + s + "'");
  return s;
}

template <class T, class F>
void join(std::ostream& os, const std::vector<T>& items, F each) {
  bool first = true;
  for (const auto& item : items) {
    if (!first) os << ", ";
    first = false;
    each(item);
  }
}

void print_pairs(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& pairs) {
  join(os, pairs, [&](const auto& p) { os << id(p.first) << " |-> " << id(p.second); });
}

void print_body(std::ostream& os, const RawCategory& c) {
  os << "category " << id(c.name) << " {\n";
  if (!c.objects.empty()) {
    os << "  objects: ";
    join(os, c.objects, [&](const auto& o) { os << id(o); });
    os << "\n";
  }
  if (!c.arrows.empty()) {
    os << "  arrows: ";
    join(os, c.arrows, [&](const RawArrow& a) { os << id(a.id) << ": " << id(a.dom) << " -> " << id(a.cod); });
    os << "\n";
  }
  if (!c.identities.empty()) {
    os << "  identities: ";
    join(os, c.identities, [&](const auto& p) { os << id(p.first) << " = " << id(p.second); });
    os << "\n";
  }
  if (!c.compose.empty()) {
    os << "  compose: ";
    join(os, c.compose, [&](const RawComposite& k) { os << id(k.g) << " . " << id(k.f) << " = " << id(k.result); });
    os << "\n";
  }
  os << "}\n";
}

void print_body(std::ostream& os, const RawFunctor& f) {
  os << "functor " << id(f.name) << " : " << id(f.source) << " -> " << id(f.target) << " {\n";
  if (!f.objects.empty()) {
    os << "  objects: ";
    print_pairs(os, f.objects);
    os << "\n";
  }
  if (!f.arrows.empty()) {
    os << "  arrows: ";
    print_pairs(os, f.arrows);
    os << "\n";
  }
  os << "}\n";
}

void print_set(std::ostream& os, const std::vector<std::string>& elems) {
  os << "{ ";
  join(os, elems, [&](const auto& e) { os << id(e); });
  os << (elems.empty() ? "}" : " }");
}

void print_body(std::ostream& os, const RawConcrete& u) {
  os << "concrete " << id(u.name) << " over " << id(u.over) << " {\n";
  for (const auto& [obj, elems] : u.carriers) {
    os << "  " << id(obj) << ": ";
    print_set(os, elems);
    os << "\n";
  }
  for (const auto& [mor, pairs] : u.actions) {
    os << "  " << id(mor) << ":";
    if (!pairs.empty()) os << " ";
    print_pairs(os, pairs);
    os << "\n";
  }
  os << "}\n";
}

void print_body(std::ostream& os, const RawAction& a) {
  os << "action " << id(a.name) << " {\n  group: " << id(a.group) << "\n  set: ";
  print_set(os, a.set);
  os << "\n";
  for (const auto& [g, pairs] : a.phi) {
    os << "  phi: " << id(g) << ":";
    if (!pairs.empty()) os << " ";
    print_pairs(os, pairs);
    os << "\n";
  }
  os << "}\n";
}

void print_body(std::ostream& os, const RawIndexed& x) {
  os << "indexed " << id(x.name) << " over " << id(x.base) << " {\n";
  for (const auto& [obj, cat] : x.fibres) os << "  fibre " << id(obj) << " = " << id(cat) << "\n";
  for (const auto& [mor, fn] : x.pulls) os << "  pull " << id(mor) << " = " << id(fn) << "\n";
  os << "}\n";
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void dot_edges(std::ostream& os, const FinCat& c, const DotOptions& options) {
  for (MorphismIndex m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m) && !options.show_identities) continue;
    os << "  " << quote(c.object_id(c.dom(m))) << " -> " << quote(c.object_id(c.cod(m)))
       << " [label=" << quote(c.morphism_id(m)) << "];\n";
  }
}

}  // namespace

ParseError::ParseError(Kind kind, SourceSpan span, std::string expected, std::string found)
    : std::runtime_error(span.file + ":" + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
                         (kind == Kind::UnresolvedReference    ? "unresolved reference: expected "
                          : kind == Kind::DuplicateDeclaration ? "duplicate declaration: expected "
                                                               : "expected ") +
                         expected + ", found " + found),
      kind_(kind),
      span_(std::move(span)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string_view to_string(DeclKind k) noexcept {
  switch (k) {
    case DeclKind::Category: return "category";
    case DeclKind::Functor: return "functor";
    case DeclKind::Concrete: return "concrete";
    case DeclKind::Action: return "action";
    case DeclKind::Indexed: return "indexed";
  }
  return "?";
}

const std::string& Declaration::name() const {
  return std::visit([](const auto& b) -> const std::string& { return b.name; }, body);
}

const Declaration* Document::find(DeclKind kind, std::string_view name) const {
  for (const auto& d : decls)
    if (d.kind() == kind && d.name() == name) return &d;
  return nullptr;
}

Document parse(std::string_view text, std::string file) {
  return Parser(Lexer(text, std::move(file)).run()).run();
}

std::vector<std::pair<std::size_t, std::size_t>> token_offsets(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  Lexer(text, "<input>").run(&out);
  return out;
}

std::string print(const Declaration& decl) {
  std::ostringstream os;
  std::visit([&](const auto& b) { print_body(os, b); }, decl.body);
  return os.str();
}

std::string print(const Document& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.decls.size(); ++i) {
    if (i) out += "\n";
    out += print(doc.decls[i]);
  }
  return out;
}

Declaration declare(const FinCat& cat) { return {to_raw(cat), {}}; }
Declaration declare(const FinFunctor& f) { return {to_raw(f), {}}; }
Declaration declare(const ConcreteStructure& u) { return {to_raw(u), {}}; }
Declaration declare(const GroupAction& act) { return {to_raw(act), {}}; }

std::vector<DeclResult> load(const Document& doc, Library& lib) {
  std::vector<DeclResult> out;
  auto need_cat = [&](const std::string& name) -> CatRef {
    auto it = lib.categories.find(name);
    if (it == lib.categories.end())
      throw ValidationError(ErrorKind::UnresolvedReference, {name}, "depends on an invalid category");
    return it->second;
  };
  for (const auto& d : doc.decls) {
    DeclResult r{d.kind(), d.name(), std::nullopt};
    try {
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, RawCategory>) {
              lib.categories.insert_or_assign(b.name, std::make_shared<const FinCat>(validate_category(b)));
            } else if constexpr (std::is_same_v<T, RawFunctor>) {
              lib.functors.insert_or_assign(b.name, validate_functor(b, need_cat(b.source), need_cat(b.target)));
            } else if constexpr (std::is_same_v<T, RawConcrete>) {
              lib.concretes.insert_or_assign(b.name, validate_concrete(b, need_cat(b.over)));
            } else if constexpr (std::is_same_v<T, RawAction>) {
              lib.actions.insert_or_assign(b.name, validate_action(b, need_cat(b.group)));
            } else {
              std::vector<std::pair<std::string, CatRef>> fibres;
              for (const auto& [obj, cat] : b.fibres) fibres.emplace_back(obj, need_cat(cat));
              std::vector<std::pair<std::string, FinFunctor>> pulls;
              for (const auto& [mor, fn] : b.pulls) {
                auto it = lib.functors.find(fn);
                if (it == lib.functors.end())
                  throw ValidationError(ErrorKind::UnresolvedReference, {fn}, "depends on an invalid functor");
                pulls.emplace_back(mor, it->second);
              }
              lib.families.insert_or_assign(b.name, make_indexed(b.name, need_cat(b.base), fibres, pulls));
            }
          },
          d.body);
    } catch (const ValidationError& e) {
      r.error = e;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string export_dot(const FinCat& cat, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph " << quote(cat.name()) << " {\n";
  for (const auto& x : cat.objects()) os << "  " << quote(x) << ";\n";
  dot_edges(os, cat, options);
  os << "}\n";
  return os.str();
}

std::string export_dot(const ConstructedCategory& cc, const DotOptions& options) {
  if (!options.cluster_by_fibre) return export_dot(*cc.cat, options);
  const FinCat& c = *cc.cat;
  const FinCat& b = cc.base();
  std::ostringstream os;
  os << "digraph " << quote(c.name()) << " {\n";
  for (ObjectIndex i = 0; i < b.object_count(); ++i) {
    os << "  subgraph " << quote("cluster_" + std::to_string(i)) << " {\n    label=" << quote(b.object_id(i))
       << ";\n";
    for (ObjectIndex x = 0; x < c.object_count(); ++x)
      if (cc.projection.map_object(x) == i) os << "    " << quote(c.object_id(x)) << ";\n";
    os << "  }\n";
  }
  dot_edges(os, c, options);
  os << "}\n";
  return os.str();
}

}  // namespace basecat
