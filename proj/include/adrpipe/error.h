// Copyright 2026 The adrpipe Authors.
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

#ifndef ADRPIPE_ERROR_H_
#define ADRPIPE_ERROR_H_

#include <stdexcept>
#include <string>

namespace adrpipe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented format or invariant. Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read, written or renamed. Maps to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace adrpipe

#endif  // ADRPIPE_ERROR_H_
