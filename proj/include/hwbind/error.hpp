/*
 * Copyright 2026 The hwbind Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace hwbind {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A requested size exceeds a configured cap (mask count, partition size).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A value set does not fit into the requested bit width.
class WidthError : public Error {
 public:
  using Error::Error;
};

class EnrollmentError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked in the wrong controller mode.
class StateError : public Error {
 public:
  using Error::Error;
};

/// The inputs do not satisfy what a scenario requires to be meaningful.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A parameter table failed its closed-loop validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A file or document could not be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace hwbind
