// Copyright 2026 The Progressive Hiding Authors
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

#ifndef PHIDE_ERRORS_H_
#define PHIDE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace phide {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed game, map or policy.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A deterministic profile has zero or several fixed-point histories for some
// Nature state, i.e. the information maps allow a temporal paradox.
class WellPosednessViolation : public Error {
 public:
  using Error::Error;
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

// Conditioning on an information label that carries no probability mass.
class ZeroReachLabel : public Error {
 public:
  using Error::Error;
};

class PerfectRecallRequired : public Error {
 public:
  using Error::Error;
};

// Bad configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace phide

#endif  // PHIDE_ERRORS_H_
