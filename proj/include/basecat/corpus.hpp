#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "basecat/dsl.hpp"
#include "basecat/fincat.hpp"
#include "basecat/finset.hpp"

namespace basecat {

struct CorpusFile {
  std::string path;
  std::string text;
  Document doc;
};

/// Declarations that failed to load, with the file they came from.
struct CorpusDefect {
  std::string file;
  DeclResult result;
};

/// Fixture files parsed one by one into a shared library. Each file must be
/// self-contained: references resolve within the file.
struct Corpus {
  std::vector<CorpusFile> files;
  Library lib;
  std::vector<CorpusDefect> defects;
};

/// Throws std::runtime_error when the file cannot be read.
std::string read_text(const std::filesystem::path& path);

/// Throws ParseError on the first malformed file; validation failures land in
/// `defects`.
Corpus load_files(const std::vector<std::filesystem::path>& paths);
/// Every `*.bcat` directly inside `dir`, in name order.
Corpus load_corpus(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Seeded random instances.

struct GenBounds {
  std::size_t max_objects = 4;
  std::size_t max_morphisms = 12;  // identities included
  std::size_t max_carrier = 4;
  std::size_t max_generators = 4;
};

/// A category of functions between small sets, closed under composition,
/// with the inclusion as a faithful concrete structure.
struct RandomConcrete {
  CatRef cat;
  ConcreteStructure u;
};

/// Objects A, B, C, D; identities id_<obj>; other morphisms m0, m1, ... .
/// Redraws until the closure fits the bounds.
RandomConcrete random_concrete(std::mt19937_64& rng, const std::string& name, const GenBounds& bounds = {});

/// The first functor in a seeded shuffle of the search order; nullopt when
/// there is none within the budget.
std::optional<FinFunctor> random_functor(std::mt19937_64& rng, const CatRef& source, const CatRef& target,
                                         const std::string& name, std::uint64_t budget = default_budget());

}  // namespace basecat
