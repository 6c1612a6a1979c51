#pragma once

#include <random>

#include "doctest.h"
#include "triad/linalg.hpp"

namespace testing {

inline void check_close(const triad::Point& a, const triad::Point& b, double tol) {
  REQUIRE(a.size() == b.size());
  CHECK(triad::norm_inf(a - b) <= tol);
}

inline void check_close(const triad::Mat<double>& a, const triad::Mat<double>& b, double tol) {
  CHECK(triad::norm_inf(a - b) <= tol);
}

inline triad::Point pt(std::initializer_list<double> xs) { return triad::Point(xs); }

inline std::mt19937_64 rng(std::uint64_t seed = 7) { return std::mt19937_64(seed); }

}  // namespace testing
