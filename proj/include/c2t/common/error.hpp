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

#include <stdexcept>
#include <string>
#include <string_view>

namespace c2t {

// Base class for every error raised by the toolkit. The CLI maps
// ProviderError (and subclasses) to exit code 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Not enough examples of some concept-set size to satisfy a split request.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

class ProviderError : public Error {
 public:
  using Error::Error;
};

// Unknown provider kind in a config. A configuration problem, not a
// backend failure.
class RegistryError : public Error {
 public:
  using Error::Error;
};

class ConnectionError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

// Runs fn(); any toolkit error escaping it is rethrown as the same type
// with "<context>: " prepended to the message.
template <typename F>
decltype(auto) with_context(std::string_view context, F&& fn) {
  const auto prefixed = [&](const std::exception& e) { return std::string(context) + ": " + e.what(); };
  try {
    return fn();
  } catch (const ConnectionError& e) {
    throw ConnectionError(prefixed(e));
  } catch (const ProviderError& e) {
    throw ProviderError(prefixed(e));
  } catch (const RegistryError& e) {
    throw RegistryError(prefixed(e));
  } catch (const LookupError& e) {
    throw LookupError(prefixed(e));
  } catch (const CapacityError& e) {
    throw CapacityError(prefixed(e));
  } catch (const ValidationError& e) {
    throw ValidationError(prefixed(e));
  } catch (const ParseError& e) {
    throw ParseError(prefixed(e));
  } catch (const Error& e) {
    throw Error(prefixed(e));
  }
}

}  // namespace c2t
