#pragma once

#include <string>
#include <vector>

namespace fphase {

// One verified identity: a formula-content anchor, a verdict, and the
// residual (difference of the two sides) when the verdict is false.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string residual;
};

using CheckList = std::vector<CheckResult>;

inline CheckResult make_check(const std::string& name, bool pass, std::string residual = "") {
  if (residual.size() > 240) residual = residual.substr(0, 240) + "...";
  return {name, pass, pass ? std::string() : residual};
}

inline bool all_pass(const CheckList& list) {
  for (const auto& c : list)
    if (!c.pass) return false;
  return true;
}

}  // namespace fphase
