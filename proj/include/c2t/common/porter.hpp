// Copyright 2026 The c2tkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace c2t::text {

// Porter suffix stripper, the revised reference variant: BLI->BLE and
// LOGI->LOG in step 2, and words of length <= 2 are returned unchanged.
// Input is lowercased first; non-ASCII bytes are treated as consonants.
std::string porter_stem(std::string_view word);

}  // namespace c2t::text
