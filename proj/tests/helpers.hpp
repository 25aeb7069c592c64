#pragma once

#include <cmath>
#include <cstdint>

#include <doctest.h>

#include "ssvar/states.hpp"

#define CHECK_NEAR(a, b, tol) CHECK_MESSAGE(std::abs((a) - (b)) <= (tol), (a), " vs ", (b))
#define REQUIRE_NEAR(a, b, tol) REQUIRE_MESSAGE(std::abs((a) - (b)) <= (tol), (a), " vs ", (b))
#define CHECK_THROWS_CODE(expr, ec)                   \
  do {                                                \
    bool thrown_ = false;                             \
    try {                                             \
      (void)(expr);                                   \
    } catch (const ssvar::Error& e_) {                \
      thrown_ = true;                                 \
      CHECK(e_.code() == (ec));                       \
    }                                                 \
    CHECK_MESSAGE(thrown_, "expected " #ec);          \
  } while (false)

namespace testing {

inline constexpr std::uint64_t kRoot = 20240611;

inline std::uint64_t seed(std::uint64_t a, std::uint64_t b = 0) {
  return ssvar::derive_seed(ssvar::derive_seed(kRoot, a), b);
}

inline double max_abs(const ssvar::CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline ssvar::CVector qubit(ssvar::Complex a, ssvar::Complex b) {
  ssvar::CVector v(2);
  v << a, b;
  return v;
}

}  // namespace testing
