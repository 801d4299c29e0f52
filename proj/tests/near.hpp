#pragma once

#include <cmath>

#include <doctest.h>

// |a - b| <= tol with both values in the failure message
#define CHECK_NEAR(a, b, tol)                                   \
  do {                                                          \
    const double va_ = (a), vb_ = (b);                          \
    INFO(#a " = " << va_ << ", " #b " = " << vb_);              \
    CHECK(std::abs(va_ - vb_) <= (tol));                        \
  } while (0)
