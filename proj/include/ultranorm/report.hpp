#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ultranorm {

struct AxiomViolation {
  std::string axiom;
  std::string witness;
};

/// Outcome of an axiom sweep. Failures are counted exhaustively; only the
/// first `kMaxRecorded` witnesses are kept.
struct AxiomReport {
  static constexpr std::size_t kMaxRecorded = 64;

  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<AxiomViolation> violations;

  bool ok() const noexcept { return failures == 0; }

  template <typename WitnessFn>
  void expect(bool holds, const char* axiom, WitnessFn&& witness) {
    ++checks;
    if (holds) return;
    ++failures;
    if (violations.size() < kMaxRecorded) violations.push_back({axiom, witness()});
  }

  void merge(const AxiomReport& other) {
    samples += other.samples;
    checks += other.checks;
    failures += other.failures;
    for (const auto& v : other.violations) {
      if (violations.size() >= kMaxRecorded) break;
      violations.push_back(v);
    }
  }
};

}  // namespace ultranorm
