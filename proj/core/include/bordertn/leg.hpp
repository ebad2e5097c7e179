// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bordertn {

/// A named tensor index. Legs are matched by `id`, never by position.
struct Leg {
  std::string id;
  std::size_t dim = 1;

  friend bool operator==(const Leg& a, const Leg& b) {
    return a.id == b.id && a.dim == b.dim;
  }
};

inline std::size_t product_of_dims(const std::vector<Leg>& legs) {
  std::size_t n = 1;
  for (const auto& l : legs) {
    if (l.dim == 0) throw std::invalid_argument("leg '" + l.id + "' has dim 0");
    if (l.dim != 0 && n > static_cast<std::size_t>(-1) / l.dim)
      throw std::invalid_argument("tensor size overflows size_t");
    n *= l.dim;
  }
  return n;
}

}  // namespace bordertn
