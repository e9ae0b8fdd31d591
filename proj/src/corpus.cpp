#include "basecat/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace basecat {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus load_files(const std::vector<std::filesystem::path>& paths) {
  Corpus corpus;
  for (const auto& path : paths) {
    CorpusFile file{path.string(), read_text(path), {}};
    file.doc = parse(file.text, file.path);
    for (auto& r : load(file.doc, corpus.lib))
      if (r.error) corpus.defects.push_back({file.path, std::move(r)});
    corpus.files.push_back(std::move(file));
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".bcat") paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());
  return load_files(paths);
}

// ---------------------------------------------------------------------------

namespace {

struct Arrow {
  std::size_t dom, cod;
  std::vector<std::size_t> map;
  bool operator==(const Arrow&) const = default;
};

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Identities first, then generators and their composites; nullopt past the cap.
std::optional<std::vector<Arrow>> close(const std::vector<std::size_t>& sizes, const std::vector<Arrow>& gens,
                                        std::size_t cap) {
  std::vector<Arrow> arrows;
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    Arrow id{x, x, {}};
    for (std::size_t i = 0; i < sizes[x]; ++i) id.map.push_back(i);
    arrows.push_back(std::move(id));
  }
  auto add = [&](Arrow a) {
    if (std::find(arrows.begin(), arrows.end(), a) == arrows.end()) arrows.push_back(std::move(a));
  };
  for (const auto& g : gens) add(g);
  for (std::size_t done = 0; arrows.size() <= cap;) {
    const std::size_t n = arrows.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        if (std::max(g, f) < done || arrows[f].cod != arrows[g].dom) continue;
        Arrow gf{arrows[f].dom, arrows[g].cod, {}};
        for (std::size_t v : arrows[f].map) gf.map.push_back(arrows[g].map[v]);
        add(std::move(gf));
      }
    if (arrows.size() == n) return arrows;
    done = n;
  }
  return std::nullopt;
}

}  // namespace

RandomConcrete random_concrete(std::mt19937_64& rng, const std::string& name, const GenBounds& bounds) {
  static const char* const kObjects[] = {"A", "B", "C", "D", "E", "F"};
  const std::size_t max_objects = std::min<std::size_t>(bounds.max_objects, std::size(kObjects));
  for (;;) {
    std::vector<std::size_t> sizes(uniform(rng, 1, max_objects));
    for (auto& s : sizes) s = uniform(rng, 1, bounds.max_carrier);
    std::vector<Arrow> gens(uniform(rng, 0, bounds.max_generators));
    for (auto& g : gens) {
      g.dom = uniform(rng, 0, sizes.size() - 1);
      g.cod = uniform(rng, 0, sizes.size() - 1);
      for (std::size_t i = 0; i < sizes[g.dom]; ++i) g.map.push_back(uniform(rng, 0, sizes[g.cod] - 1));
    }
    auto arrows = close(sizes, gens, bounds.max_morphisms);
    if (!arrows) continue;

    FinCat::Builder b(name);
    std::vector<FinSetObj> carriers;
    for (std::size_t x = 0; x < sizes.size(); ++x) {
      b.add_object(kObjects[x]);
      std::vector<std::string> elems;
      for (std::size_t i = 0; i < sizes[x]; ++i) elems.push_back(std::to_string(i));
      carriers.push_back(make_finset(std::string("U") + kObjects[x], std::move(elems)));
    }
    for (std::size_t m = 0; m < arrows->size(); ++m) {
      const Arrow& a = (*arrows)[m];
      if (m < sizes.size())
        b.set_identity(m, b.add_morphism(default_identity_id(kObjects[m]), m, m));
      else
        b.add_morphism("m" + std::to_string(m - sizes.size()), a.dom, a.cod);
    }
    for (std::size_t g = sizes.size(); g < arrows->size(); ++g)
      for (std::size_t f = sizes.size(); f < arrows->size(); ++f) {
        const Arrow &ag = (*arrows)[g], &af = (*arrows)[f];
        if (af.cod != ag.dom) continue;
        Arrow gf{af.dom, ag.cod, {}};
        for (std::size_t v : af.map) gf.map.push_back(ag.map[v]);
        const auto r = static_cast<std::size_t>(std::find(arrows->begin(), arrows->end(), gf) - arrows->begin());
        b.set_compose(g, f, r);
      }
    auto cat = std::make_shared<const FinCat>(std::move(b).build());

    std::vector<FinFn> fns;
    for (const Arrow& a : *arrows) fns.push_back(FinFn{carriers[a.dom], carriers[a.cod], a.map});
    ConcreteStructure u = make_concrete("U" + name, cat, carriers, std::move(fns));
    return {std::move(cat), std::move(u)};
  }
}

std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const CatRef& source, const CatRef& target,
                                         const std::string& name, std::uint64_t budget) {
  std::optional<FinFunctor> found;
  search_functors(
      source, target,
      [&](const FinFunctor& f) {
        found.emplace(name, source, target, f.object_map(), f.morphism_map());
        return false;
      },
      budget, [&](std::vector<std::size_t>& order) { std::shuffle(order.begin(), order.end(), rng); });
  return found;
}

}  // namespace basecat
