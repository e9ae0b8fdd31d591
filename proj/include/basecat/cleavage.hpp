#pragma once

#include <cstddef>
#include <vector>

#include "basecat/fincat.hpp"

namespace basecat {

enum class LiftKind { Cartesian, OpCartesian };

/// A chosen lift for every (base morphism u, total object Y). For a cleavage Y
/// lies over cod u and the lift ends at Y; for an opcleavage Y lies over dom u
/// and the lift starts at Y. Entries for other pairs are kNoMorphism.
struct Cleavage {
  LiftKind kind = LiftKind::Cartesian;
  std::size_t total_objects = 0;
  std::vector<MorphismIndex> lift;  // [u * total_objects + Y]

  MorphismIndex at(MorphismIndex u, ObjectIndex y) const { return lift.at(u * total_objects + y); }
  MorphismIndex& at(MorphismIndex u, ObjectIndex y) { return lift.at(u * total_objects + y); }

  bool operator==(const Cleavage&) const = default;
};

}  // namespace basecat
