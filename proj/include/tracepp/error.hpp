/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The tracepp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracepp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Wrong-degree or reducible modulus (base field or cubic).
class ModulusInvalid : public Error { using Error::Error; };
class DivisionByZero : public Error { using Error::Error; };
/// A postcondition the mathematics guarantees was violated: an arithmetic bug.
class InternalError : public Error { using Error::Error; };
class EvalRangeError : public Error { using Error::Error; };
class HypothesisError : public Error { using Error::Error; };
class ParamError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };
/// Work estimate above the default budget; lifted by an explicit opt-in.
class ResourceGuard : public Error { using Error::Error; };

/// Exponent expression with no meaning, e.g. the zero polynomial in q. Carries the byte
/// offset when raised by the parser.
class ExprInvalid : public Error {
public:
    explicit ExprInvalid(const std::string& what, std::optional<std::size_t> offset = std::nullopt)
        : Error(offset ? "invalid exponent at offset " + std::to_string(*offset) + ": " + what : what),
          offset_(offset) {}

    std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
    std::optional<std::size_t> offset_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error(format(offset, expected, what)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& what) {
        std::string msg = "parse error at offset " + std::to_string(offset) + ": " + what;
        if (!expected.empty()) {
            msg += " (expected one of:";
            for (const auto& e : expected)
                msg += " '" + e + "'";
            msg += ")";
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

} // namespace tracepp
