#ifndef MUSTAFIN_TESTS_LAW_CHECK_HPP
#define MUSTAFIN_TESTS_LAW_CHECK_HPP

#include <doctest.h>

#include "harness.hpp"

namespace mustafin::testing {

inline void check_laws(const std::vector<Law>& laws) {
  for (const auto& law : laws) {
    LawOutcome out = run_law(law);
    INFO(law.module << " / " << law.name);
    CHECK(out.cases >= kMinCases);
    CHECK_MESSAGE(out.failures == 0, out.failures << " failing cases, first " << out.first_failure);
  }
}

}  // namespace mustafin::testing

#endif  // MUSTAFIN_TESTS_LAW_CHECK_HPP
