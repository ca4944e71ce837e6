// Copyright 2026 The Gripforge Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace gripforge {

enum class ErrorCode {
  kUnreadableFile,
  kMalformedGeometry,
  kEmptyMesh,
  kInvalidArgument,
  kDegenerateHull,
  kTooFewPoints,
  kTaskFormat,
  kMissingMesh,
  kNonRigidTransform,
  kSequenceInconsistency,
  kExclusionOutOfRange,
  kUngraspableComponent,
  kInfeasibleComponent,
  kProblemTooLarge,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised when a component cannot be handled; carries the component id
/// so callers can name it.
class ComponentError : public Error {
 public:
  ComponentError(ErrorCode code, std::string component, const std::string& what)
      : Error(code, what), component_(std::move(component)) {}
  const std::string& component() const noexcept { return component_; }

 private:
  std::string component_;
};

/// Wraps any failure with the pipeline stage it came from.
class StageError : public Error {
 public:
  StageError(std::string stage, std::string component, ErrorCode code, const std::string& what)
      : Error(code, "[" + stage + (component.empty() ? "" : ":" + component) + "] " + what),
        stage_(std::move(stage)),
        component_(std::move(component)) {}
  const std::string& stage() const noexcept { return stage_; }
  const std::string& component() const noexcept { return component_; }

 private:
  std::string stage_;
  std::string component_;
};

}  // namespace gripforge
