// Copyright 2026 The eecrel Authors
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

#ifndef EECREL_ERROR_HPP
#define EECREL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace eecrel {

/// A numeric argument lies outside the domain of the model.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was applied to an object of the wrong kind, e.g. a
/// series formula on a parallel system.
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A scenario document violates the schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw DomainError(message);
    }
}

} // namespace detail
} // namespace eecrel

#endif // EECREL_ERROR_HPP
