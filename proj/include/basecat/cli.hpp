#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace basecat {

/// Exit codes of the command-line front end. Stable.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;   // a claim or a declaration failed
inline constexpr int kExitUsage = 2;  // bad arguments, unreadable or malformed input

/// `args` excludes the program name. Reports go to `out`, diagnostics to `err`.
///   validate FILE...
///   construct KIND INPUT... [--out F] [--dot F]
///   check fibration|opfibration|split EXPR
///   check cartesian|opcartesian EXPR MORPHISM
///   check iso EXPR EXPR
///   verify SUITE [--corpus DIR] [--seed N] [--witness inverse|search]
///   export EXPR [--dot F] [--identities] [--cluster]
/// EXPR is a declared name or `kind(arg,...)` with a construction kind, or
/// `op(EXPR)`. Global: --format human|machine, --budget N, --corpus DIR,
/// --input FILE (repeatable; loaded after the corpus).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace basecat
