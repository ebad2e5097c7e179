// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace bordertn::flops {

/// What a multiply was spent on, from the point of view of the
/// boundary-MPS schedules. Everything outside a tagged scope lands in
/// `other`.
enum class Cat : int {
  gather = 0,  // carry-over / boundary-MPS bond contractions
  ket,         // absorbing a ket-layer tensor
  bra,         // absorbing a bra-layer tensor
  svd,         // forming the S*V^dagger factor after a truncated SVD
  canon,       // QR re-canonicalization sweeps of the boundary MPS
  zip,         // final overlap of the two boundary MPSs
  other,
  kCount
};

constexpr int kNumCats = static_cast<int>(Cat::kCount);

struct Counts {
  std::array<std::uint64_t, kNumCats> by_cat{};

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto v : by_cat) t += v;
    return t;
  }
  std::uint64_t operator[](Cat c) const { return by_cat[static_cast<int>(c)]; }
  Counts operator-(const Counts& o) const {
    Counts r;
    for (int i = 0; i < kNumCats; ++i) r.by_cat[i] = by_cat[i] - o.by_cat[i];
    return r;
  }
};

/// Per-thread counter of complex multiply-adds in dense matrix products.
void add(std::uint64_t n);
Counts snapshot();
void reset();

/// Tags all multiplies on this thread until destruction.
class CatScope {
 public:
  explicit CatScope(Cat c);
  ~CatScope();
  CatScope(const CatScope&) = delete;
  CatScope& operator=(const CatScope&) = delete;

 private:
  Cat prev_;
};

}  // namespace bordertn::flops
