#pragma once

// Self-verification suite: cross-checks every closed form against an
// independent route (tripartite oracle, grid search, generic pipeline).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cloneq {

enum class VerifyLevel { fast, full };

struct VerifyCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<VerifyCheck> run_verification(VerifyLevel level,
                                          std::uint64_t seed = 0);

bool all_passed(const std::vector<VerifyCheck>& checks);

// One line per check plus a summary; returns all_passed.
bool print_verification(std::ostream& out,
                        const std::vector<VerifyCheck>& checks);

}  // namespace cloneq
