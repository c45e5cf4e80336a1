#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "fphase/bits.hpp"
#include "fphase/error.hpp"

namespace fphase {

enum class GenClass { fock_param, phase_q, phase_p, aux };

struct GenInfo {
  std::string label;
  GenClass cls;
};

using GenId = int;

// Append-only registry of anticommuting generators.  Ids index monomial bits,
// so their order is the canonical generator order.  Each computation owns a
// workspace; elements over different workspaces never mix.
class Workspace {
 public:
  GenId fresh(std::string label, GenClass cls = GenClass::aux) {
    std::lock_guard<std::mutex> lock(mu_);
    if (gens_.size() >= kMaxGenerators)
      fail(ErrorKind::capacity, "generator budget exceeded (" +
                                    std::to_string(kMaxGenerators) + ")");
    gens_.push_back({std::move(label), cls});
    return static_cast<GenId>(gens_.size() - 1);
  }

  std::vector<GenId> fresh_set(const std::string& prefix, int n,
                               GenClass cls = GenClass::aux) {
    std::vector<GenId> ids;
    ids.reserve(n);
    for (int k = 0; k < n; ++k) ids.push_back(fresh(prefix + std::to_string(k + 1), cls));
    return ids;
  }

  size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return gens_.size();
  }

  const std::string& label(GenId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id < 0 || id >= static_cast<GenId>(gens_.size()))
      fail(ErrorKind::registry_mismatch, "unknown generator id " + std::to_string(id));
    return gens_[id].label;
  }

  GenClass gen_class(GenId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    return gens_.at(id).cls;
  }

  Workspace() = default;
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

 private:
  mutable std::mutex mu_;
  std::vector<GenInfo> gens_;
};

}  // namespace fphase
