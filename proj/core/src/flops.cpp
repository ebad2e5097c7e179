// SPDX-License-Identifier: Apache-2.0
#include "bordertn/flops.hpp"

namespace bordertn::flops {

namespace {
thread_local Counts g_counts;
thread_local Cat g_cat = Cat::other;
}  // namespace

void add(std::uint64_t n) { g_counts.by_cat[static_cast<int>(g_cat)] += n; }

Counts snapshot() { return g_counts; }

void reset() { g_counts = Counts{}; }

CatScope::CatScope(Cat c) : prev_(g_cat) { g_cat = c; }
CatScope::~CatScope() { g_cat = prev_; }

}  // namespace bordertn::flops
