// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
// Limits and floors are pinned here, not taken from the library defaults.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "basecat/constructions.hpp"
#include "basecat/corpus.hpp"
#include "basecat/fibration.hpp"
#include "basecat/suites.hpp"

using namespace basecat;

namespace {

constexpr std::uint64_t kSeed = 7;
constexpr double kLimitProp2 = 10.0, kLimitProp3 = 10.0, kLimitProp4 = 5.0, kLimitMain = 20.0;  // seconds
constexpr std::size_t kMinFunctors = 25, kMinPairs = 15, kMinFamilies = 10;
constexpr std::size_t kSquares = 50, kProbe = 3, kMaxSet = 5, kMaxCarrier = 4;

struct Verdict {
  bool ok = false;
  std::string detail;
};

struct Timed {
  Verdict verdict;
  double seconds;
};

Timed timed(const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  return {v, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::size_t count_suffix(const Report& r, const std::string& suffix, Status status) {
  std::size_t n = 0;
  for (const auto& e : r.entries())
    if (e.status == status && e.claim.size() >= suffix.size() &&
        e.claim.compare(e.claim.size() - suffix.size(), suffix.size(), suffix) == 0)
      ++n;
  return n;
}

std::string first_failure(const Report& r) {
  for (const auto& e : r.entries())
    if (e.status == Status::Fail) return e.claim + ": " + e.detail;
  return {};
}

int failures = 0;

void line(int id, const std::string& title, const Timed& t, double limit = 0) {
  const bool in_time = limit <= 0 || t.seconds < limit;
  const bool ok = t.verdict.ok && in_time;
  failures += !ok;
  std::string detail = t.verdict.detail;
  char buf[96];
  if (limit > 0)
    std::snprintf(buf, sizeof buf, "; %.3f s (limit %.0f s)", t.seconds, limit);
  else
    std::snprintf(buf, sizeof buf, "; %.3f s", t.seconds);
  detail += buf;
  if (!in_time) detail += "; over the time limit";
  std::printf("[%s] C%d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
}

}  // namespace

int main() {
  const std::string dir = BASECAT_CORPUS_DIR;
  const Corpus corpus = load_corpus(dir);
  if (!corpus.defects.empty()) {
    std::printf("[FAIL] corpus: %s has invalid declaration %s\n", corpus.defects[0].file.c_str(),
                corpus.defects[0].result.name.c_str());
    return 1;
  }
  SuiteOptions options;
  options.seed = kSeed;

  line(1, "prop2 graph projections are split fibrations and split opfibrations", timed([&] {
         const Report r = suite_prop2(corpus, options);
         const std::size_t n = count_suffix(r, ".graph", Status::Pass);
         const bool all = count_suffix(r, ".fibration", Status::Pass) == n &&
                          count_suffix(r, ".opfibration", Status::Pass) == n &&
                          count_suffix(r, ".split", Status::Pass) == n && count_suffix(r, ".opsplit", Status::Pass) == n;
         return Verdict{r.ok() && all && n >= kMinFunctors,
                        std::to_string(n) + " functors (need " + std::to_string(kMinFunctors) + "), " +
                            std::to_string(r.count(Status::Pass)) + " claims pass" +
                            (r.ok() ? "" : "; " + first_failure(r))};
       }),
       kLimitProp2);

  line(2, "prop3 concrete graph projections are split opfibrations", timed([&] {
         const Report r = suite_prop3(corpus, options);
         const std::size_t n = count_suffix(r, ".opfibration", Status::Pass);
         bool small = options.bounds.max_carrier <= kMaxCarrier;
         for (const auto& [name, u] : corpus.lib.concretes)
           for (const auto& c : u.carriers()) small = small && c.size() <= kMaxCarrier;
         return Verdict{r.ok() && small && n >= kMinPairs && count_suffix(r, ".opsplit", Status::Pass) == n,
                        std::to_string(n) + " pairs (need " + std::to_string(kMinPairs) + "), carriers <= " +
                            std::to_string(kMaxCarrier) + (r.ok() ? "" : "; " + first_failure(r))};
       }),
       kLimitProp3);

  line(3, "prop4 transformation groupoids match the right action", timed([&] {
         const std::map<std::string, std::size_t> expected{
             {"z2swap", 4}, {"z2trivial", 4}, {"z3regular", 9}, {"s3natural", 18}};
         std::string detail;
         bool ok = true;
         for (const auto& [name, want] : expected) {
           const auto it = corpus.lib.actions.find(name);
           if (it == corpus.lib.actions.end()) return Verdict{false, "missing action " + name};
           const GroupAction& act = it->second;
           const Prop4Result res = verify_prop4(act);
           validate_iso(res.witness);
           // Enumerate G x X and find each (g,x) : x -> phi_g(x) in the groupoid.
           const FinCat& tg = *res.groupoid.cat;
           std::size_t pairs = 0;
           for (std::size_t g = 0; g < act.group->morphism_count(); ++g)
             for (std::size_t x = 0; x < act.carrier.size(); ++x)
               for (std::size_t m = 0; m < tg.morphism_count(); ++m) {
                 const PairLabel& l = res.groupoid.morphism_labels[m];
                 if (l.first == act.group->morphism_id(g) && l.second == act.carrier.elements[x] &&
                     tg.object_id(tg.dom(m)) == act.carrier.elements[x] &&
                     tg.object_id(tg.cod(m)) == act.carrier.elements[act.phi[g](x)])
                   ++pairs;
               }
           const std::size_t got = res.groupoid.cat->morphism_count();
           ok = ok && got == want && pairs == want && res.right_action.cat->morphism_count() == want &&
                res.witness.forward.bijective();
           detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(got) + "/" + std::to_string(want);
         }
         const Report r = suite_prop4(corpus, options);
         return Verdict{ok && r.ok(), detail};
       }),
       kLimitProp4);

  line(4, "main proposition legs, self-dual leg on every groupoid base", timed([&] {
         const Report r = suite_main(corpus, options);
         const std::size_t concrete = count_suffix(r, ".iii.graph~left", Status::Pass) +
                                      count_suffix(r, ".iii.graph~right", Status::Pass) +
                                      count_suffix(r, ".iii.left~right", Status::Pass);
         std::string coverage;
         for (const auto& e : r.entries())
           if (e.claim == "main.coverage") coverage = e.detail;
         return Verdict{r.ok() && concrete > 0 && !coverage.empty(),
                        std::to_string(r.count(Status::Pass)) + " legs pass, " + std::to_string(concrete) +
                            " concrete isomorphisms, " + coverage + (r.ok() ? "" : "; " + first_failure(r))};
       }),
       kLimitMain);

  line(5, "duality presentations identical after normalization", timed([&] {
         const Report r = suite_duality(corpus, options);
         const std::size_t abstract = count_suffix(r, ".abstract", Status::Pass);
         const std::size_t concrete = count_suffix(r, ".concrete", Status::Pass);
         return Verdict{r.ok() && abstract >= corpus.lib.functors.size() && concrete > 0,
                        std::to_string(abstract) + " abstract and " + std::to_string(concrete) +
                            " concrete pairs byte-identical" + (r.ok() ? "" : "; " + first_failure(r))};
       }));

  line(6, "cartesian lemmas on every fibration, exhaustive", timed([&] {
         const Report r = suite_appendix_c(corpus, options);
         const std::size_t scanned = count_suffix(r, ".factorization", Status::Pass);
         return Verdict{r.ok() && scanned > 0 && count_suffix(r, ".compose", Status::Pass) == scanned &&
                            count_suffix(r, ".iso", Status::Pass) == scanned,
                        std::to_string(scanned) + " fibrations, " + std::to_string(r.count(Status::Fail)) +
                            " counterexamples" + (r.ok() ? "" : "; " + first_failure(r))};
       }));

  line(7, "grothendieck round trip through recovered families", timed([&] {
         const Report r = suite_grothendieck(corpus, options);
         const std::size_t n = count_suffix(r, ".roundtrip", Status::Pass);
         return Verdict{r.ok() && n >= kMinFamilies, std::to_string(n) + " strict families (need " +
                                                          std::to_string(kMinFamilies) + ")" +
                                                          (r.ok() ? "" : "; " + first_failure(r))};
       }));

  line(8, "FinSet pullback figure and fiberwise counts", timed([&] {
         const FinSetObj a = make_finset("A", {"a1", "a2"}), b = make_finset("B", {"b1", "b2", "b3"}),
                         c = make_finset("C", {"c1", "c2"});
         const FinFn f = make_fn(a, c, {{"a1", "c1"}, {"a2", "c2"}}, "f");
         const FinFn g = make_fn(b, c, {{"b1", "c1"}, {"b2", "c1"}, {"b3", "c2"}}, "g");
         const Pullback pb = pullback_finset(f, g);
         const bool figure = pb.object.elements == std::vector<std::string>{"(a1,b1)", "(a1,b2)", "(a2,b3)"} &&
                             std::holds_alternative<UniversalOk>(verify_pullback_universal(square_of(pb, f, g), kProbe));
         SuiteOptions o = options;
         o.pullback_squares = kSquares;
         o.pullback_probe = kProbe;
         o.pullback_max_set = kMaxSet;
         const Report r = suite_pullback(corpus, o);
         return Verdict{figure && r.ok(), std::string(figure ? "figure {(a1,b1),(a1,b2),(a2,b3)} universal" : "figure wrong") +
                                              ", " + std::to_string(kSquares) + " random squares" +
                                              (r.ok() ? "" : "; " + first_failure(r))};
       }));

  line(9, "parser round trip and one-token deletions", timed([&] {
         std::vector<std::filesystem::path> files;
         for (const auto& sub : {dir, dir + "/negative"})
           for (const auto& e : std::filesystem::directory_iterator(sub))
             if (e.path().extension() == ".bcat") files.push_back(e.path());
         std::sort(files.begin(), files.end());
         const Corpus all = load_files(files);
         const Report r = suite_parser(all, options);
         return Verdict{r.ok() && count_suffix(r, ".deletions", Status::Pass) == files.size() &&
                            count_suffix(r, ".roundtrip", Status::Pass) == files.size(),
                        std::to_string(files.size()) + " files" + (r.ok() ? "" : "; " + first_failure(r))};
       }));

  line(10, "negative controls fail as specified", timed([&] {
         std::string detail;
         const FunctorOver partial{corpus.lib.functors.at("partialTotal"), {}, {}};
         const auto fib = check_fibration(partial);
         const auto* missing = std::get_if<MissingLift>(&fib);
         const bool c1 = missing && describe(partial, *missing) == "MissingLift(f,*)";
         detail += c1 ? "partialTotal MissingLift(f,*)" : "partialTotal not rejected as expected";

         const FunctorOver noncart{corpus.lib.functors.at("nonCartesian"), {}, {}};
         const bool c2 = std::holds_alternative<LiftCounterexample>(is_cartesian(noncart, "f1"));
         detail += c2 ? ", nonCartesian f1 not cartesian" : ", nonCartesian f1 accepted";

         const Corpus neg = load_corpus(dir + "/negative");
         const bool c3 = neg.defects.size() == 1 && neg.defects[0].result.error &&
                         neg.defects[0].result.error->tag() == "AssociativityViolation(a,a,a)";
         detail += c3 ? ", assocBad AssociativityViolation(a,a,a)" : ", assocBad not rejected as expected";
         return Verdict{c1 && c2 && c3, detail};
       }));

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
