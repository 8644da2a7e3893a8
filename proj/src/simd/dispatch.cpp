// Copyright 2026 The x2static Authors. All rights reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <string_view>

#include "x2s/simd.hpp"

namespace x2s::simd {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
    case Level::neon:
      return "neon";
  }
  return "unknown";
}

const Kernels* kernels_for(Level level) {
  switch (level) {
    case Level::scalar:
      return &detail::kScalar;
    case Level::avx2:
      return detail::avx2_table();
    case Level::neon:
      return detail::neon_table();
  }
  return nullptr;
}

std::vector<Level> available_levels() {
  std::vector<Level> out;
  for (Level level : {Level::scalar, Level::avx2, Level::neon}) {
    if (kernels_for(level) != nullptr) out.push_back(level);
  }
  return out;
}

namespace {

const Kernels& resolve() {
  if (const char* forced = std::getenv("X2S_SIMD")) {
    const std::string_view want(forced);
    for (Level level : available_levels()) {
      if (level_name(level) == want) return *kernels_for(level);
    }
    // unknown or unavailable request: fall through to the best available
  }
  if (const Kernels* k = detail::avx2_table()) return *k;
  if (const Kernels* k = detail::neon_table()) return *k;
  return detail::kScalar;
}

}  // namespace

const Kernels& active() {
  static const Kernels& table = resolve();
  return table;
}

}  // namespace x2s::simd
