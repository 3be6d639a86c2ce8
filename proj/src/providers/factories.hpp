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

#include <memory>

#include "c2t/providers/providers.hpp"

namespace c2t::providers::detail {

std::shared_ptr<Provider> make_stub_embedder(const Json& config);
std::shared_ptr<Provider> make_hash_embedder(const Json& config);
std::shared_ptr<Provider> make_stub_attention(const Json& config);
std::shared_ptr<Provider> make_hash_ppl(const Json& config);
std::shared_ptr<Provider> make_echo_infiller(const Json& config);
std::shared_ptr<Provider> make_echo_generator(const Json& config);
std::shared_ptr<Provider> make_lookup_generator(const Json& config);

std::shared_ptr<Provider> make_http_embedder(const Json& config);
std::shared_ptr<Provider> make_http_attention(const Json& config);
std::shared_ptr<Provider> make_http_ppl(const Json& config);
std::shared_ptr<Provider> make_http_infiller(const Json& config);
std::shared_ptr<Provider> make_http_generator(const Json& config);

}  // namespace c2t::providers::detail
