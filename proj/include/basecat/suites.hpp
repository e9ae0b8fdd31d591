#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "basecat/corpus.hpp"
#include "basecat/report.hpp"

namespace basecat {

enum class WitnessMode {
  Inverse,  // groupoid sources only, f |-> (f^-1)_op
  Search,   // any source with C ~ C^op found by the isomorphism search
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  std::uint64_t budget = default_budget();
  WitnessMode witness = WitnessMode::Inverse;
  std::size_t random_instances = 12;  // per suite that draws any
  GenBounds bounds{};
  std::size_t pullback_squares = 50;
  std::size_t pullback_probe = 3;
  std::size_t pullback_max_set = 5;
};

/// Instance floors enforced by the coverage claims.
inline constexpr std::size_t kProp2MinFunctors = 25;
inline constexpr std::size_t kProp3MinPairs = 15;
inline constexpr std::size_t kGrothendieckMinFamilies = 10;

/// Claim ids are `<suite>.<instance>.<check>`; suites with an instance floor
/// end with `<suite>.coverage`. Deterministic for a fixed corpus and seed.
Report suite_prop2(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_prop3(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_prop4(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_main(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_duality(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_appendix_c(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_grothendieck(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_pullback(const Corpus& corpus, const SuiteOptions& options = {});
Report suite_parser(const Corpus& corpus, const SuiteOptions& options = {});

/// prop2 prop3 prop4 main duality appendixC grothendieck pullback parser, then all.
const std::vector<std::string>& suite_names();
/// Leads with one failing `corpus.<file>.<decl>` claim per corpus defect.
/// Throws std::invalid_argument for an unknown name.
Report run_suite(std::string_view name, const Corpus& corpus, const SuiteOptions& options = {});

}  // namespace basecat
