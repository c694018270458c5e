// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>

#include "fbf/geometry.hpp"

namespace fbf_test {

inline fbf::Point pt(std::initializer_list<double> xs) {
  fbf::Point p(static_cast<fbf::Index>(xs.size()));
  fbf::Index i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

}  // namespace fbf_test
