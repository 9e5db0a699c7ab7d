/*
 * Copyright 2026 The Rigalign Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RIGALIGN_ERROR_HPP_
#define RIGALIGN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rigalign {

/// Base class for all rigalign exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two transforms (or a transform and a data frame) do not chain.
class FrameMismatchError : public Error {
 public:
  FrameMismatchError(const std::string& expected, const std::string& actual)
      : Error("frame mismatch: expected '" + expected + "' but got '" + actual +
              "'") {}
};

/// A query time lies outside the supported interval (no extrapolation).
class TimeRangeError : public Error {
 public:
  using Error::Error;
};

/// A trajectory does not cover the time span required by an operation.
class TrajectoryCoverageError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside its mathematical domain (e.g. azimuth range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Too few points remain for a registration step.
class InsufficientPointsError : public Error {
 public:
  using Error::Error;
};

/// A camera schedule is empty or does not cover the required interval.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

/// A target-alignment object has no member points.
class ObjectWithoutPointsError : public Error {
 public:
  using Error::Error;
};

/// Evaluation inputs were produced from different scenes/recordings.
class SceneMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File parsing / serialization failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rigalign

#endif  // RIGALIGN_ERROR_HPP_
