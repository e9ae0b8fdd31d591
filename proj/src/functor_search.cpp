#include <numeric>
#include <vector>

#include "basecat/fincat.hpp"

namespace basecat {

namespace {

class FunctorSearch {
 public:
  FunctorSearch(const CatRef& source, const CatRef& target, const std::function<bool(const FinFunctor&)>& visit,
                std::uint64_t budget, const std::function<void(std::vector<std::size_t>&)>& shuffle)
      : src_ref_(source), tgt_ref_(target), s_(*source), t_(*target), visit_(visit), budget_(budget), shuffle_(shuffle) {
    for (MorphismIndex m = 0; m < s_.morphism_count(); ++m)
      if (!s_.is_identity(m)) order_.push_back(m);
    factorizations_.resize(s_.morphism_count());
    for (MorphismIndex g = 0; g < s_.morphism_count(); ++g)
      for (MorphismIndex f = 0; f < s_.morphism_count(); ++f)
        if (s_.composable(g, f)) factorizations_[s_.compose(g, f)].emplace_back(g, f);
    obj_.assign(s_.object_count(), 0);
    mor_.assign(s_.morphism_count(), kNoMorphism);
  }

  std::size_t run() {
    assign_object(0);
    return visited_;
  }

 private:
  bool tick() { return ++nodes_ <= budget_; }

  std::vector<std::size_t> candidates(std::vector<std::size_t> c) const {
    if (shuffle_) shuffle_(c);
    return c;
  }

  // Returns false once the search must stop.
  bool assign_object(ObjectIndex x) {
    if (x == s_.object_count()) {
      for (ObjectIndex y = 0; y < s_.object_count(); ++y) mor_[s_.identity(y)] = t_.identity(obj_[y]);
      return assign_morphism(0);
    }
    std::vector<std::size_t> all(t_.object_count());
    std::iota(all.begin(), all.end(), 0);
    for (ObjectIndex y : candidates(std::move(all))) {
      if (!tick()) return false;
      obj_[x] = y;
      if (!assign_object(x + 1)) return false;
    }
    return true;
  }

  bool consistent(MorphismIndex m) const {
    auto check = [&](MorphismIndex g, MorphismIndex f) {
      const MorphismIndex gf = s_.compose(g, f);
      if (mor_[g] == kNoMorphism || mor_[f] == kNoMorphism || mor_[gf] == kNoMorphism) return true;
      return mor_[gf] == t_.compose(mor_[g], mor_[f]);
    };
    for (MorphismIndex x = 0; x < s_.morphism_count(); ++x) {
      if (mor_[x] == kNoMorphism) continue;
      if (s_.composable(m, x) && !check(m, x)) return false;
      if (s_.composable(x, m) && !check(x, m)) return false;
    }
    for (auto [g, f] : factorizations_[m])
      if (!check(g, f)) return false;
    return true;
  }

  bool assign_morphism(std::size_t k) {
    if (k == order_.size()) {
      ++visited_;
      return visit_(FinFunctor("F", src_ref_, tgt_ref_, obj_, mor_));
    }
    const MorphismIndex m = order_[k];
    const auto& hom = t_.hom(obj_[s_.dom(m)], obj_[s_.cod(m)]);
    for (MorphismIndex n : candidates(std::vector<std::size_t>(hom.begin(), hom.end()))) {
      if (!tick()) return false;
      mor_[m] = n;
      if (consistent(m) && !assign_morphism(k + 1)) {
        mor_[m] = kNoMorphism;
        return false;
      }
      mor_[m] = kNoMorphism;
    }
    return true;
  }

  CatRef src_ref_, tgt_ref_;
  const FinCat& s_;
  const FinCat& t_;
  const std::function<bool(const FinFunctor&)>& visit_;
  std::uint64_t budget_;
  const std::function<void(std::vector<std::size_t>&)>& shuffle_;
  std::uint64_t nodes_ = 0;
  std::size_t visited_ = 0;
  std::vector<MorphismIndex> order_;
  std::vector<std::vector<std::pair<MorphismIndex, MorphismIndex>>> factorizations_;
  std::vector<ObjectIndex> obj_;
  std::vector<MorphismIndex> mor_;
};

}  // namespace

std::size_t search_functors(const CatRef& source, const CatRef& target,
                            const std::function<bool(const FinFunctor&)>& visit, std::uint64_t budget,
                            const std::function<void(std::vector<std::size_t>&)>& shuffle) {
  return FunctorSearch(source, target, visit, budget, shuffle).run();
}

}  // namespace basecat
