// Copyright 2026 The hybridts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hybridts/caps.h"

#include <cstdlib>
#include <string>

namespace hybridts {

std::int64_t dimension_cap(std::int64_t default_cap) {
    const char *env = std::getenv("HYBRIDTS_DIM_CAP");
    if (env == nullptr || *env == '\0') {
        return default_cap;
    }
    try {
        long long v = std::stoll(env);
        return v > 0 ? v : default_cap;
    } catch (const std::exception &) {
        return default_cap;
    }
}

}  // namespace hybridts
