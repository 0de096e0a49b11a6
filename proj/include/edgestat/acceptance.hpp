#pragma once

// The fixed acceptance battery: exact identity and inequality sweeps plus
// Monte-Carlo reproduction of the two extremal constructions. All seeds are
// built in, so a run is reproducible bit for bit.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace edgestat {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double target_seconds = 0.0;  // 0: no runtime target
};

inline constexpr std::uint64_t kAcceptanceSeed = 0x5EED'2024'0601ULL;

/// Runs criteria 1..11 in order (or only those listed in `only`).
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

std::string format_criterion(const CriterionResult& r);

}  // namespace edgestat
