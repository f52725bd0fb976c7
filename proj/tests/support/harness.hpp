#ifndef MUSTAFIN_TESTS_HARNESS_HPP
#define MUSTAFIN_TESTS_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mustafin/rng.hpp"

namespace mustafin::testing {

inline constexpr std::size_t kMinCases = 100;

/// A case returns nullopt on success or a description of the failure.
using CaseBody = std::function<std::optional<std::string>(SplitMix64& rng, std::size_t index)>;

struct Law {
  std::string module;
  std::string name;
  std::size_t cases = kMinCases;
  CaseBody body;
};

struct LawOutcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double elapsed_ms = 0;

  bool passed() const { return failures == 0 && cases >= kMinCases; }
};

/// Case k draws from SplitMix64(seed).split(k); thrown exceptions count as
/// failures.
LawOutcome run_law(const Law& law, std::uint64_t seed = 20240611);

std::vector<Law> poly_core_laws();
std::vector<Law> ideal_engine_laws();
std::vector<Law> geometry_laws();
std::vector<Law> syzygy_laws();
std::vector<Law> fermat_laws();
std::vector<Law> cli_laws();

std::vector<Law> all_laws();

/// Formats "expected X, got Y" style messages.
std::string mismatch(const std::string& what, const std::string& expected, const std::string& actual);

}  // namespace mustafin::testing

#endif  // MUSTAFIN_TESTS_HARNESS_HPP
