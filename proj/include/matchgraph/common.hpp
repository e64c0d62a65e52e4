// Copyright 2026 The matchgraph Authors
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

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace matchgraph {

using complex = std::complex<double>;

// Tolerance tiers used across the library.  Structural checks (unitarity,
// determinants) are the tightest; anything that survives a numerical
// round trip gets an order of magnitude of slack; cross-implementation
// comparisons (simulator vs. oracle) another one.
inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kRoundTripTol = 1e-10;
inline constexpr double kOracleTol = 1e-9;

enum class ErrorCode {
  ParseError,
  DisconnectedGraph,
  NotATree,
  IsAPath,
  NoBranchVertex,
  NotUnitary,
  DeterminantMismatch,
  UnknownGate,
  MissingParameter,
  TargetOutOfRange,
  DuplicateTarget,
  TooManyQubits,
  IndexOutOfRange,
  SizeMismatch,
  NotNearestNeighbor,
  NotWrapEdge,
  UnsupportedGraph,
  CapacityExceeded,
  NonPrimitiveGate,
  UnsupportedLogicalGate,
  BlockedRoute,
  PathNotClear,
  AncillaDirty,
  SameLogicalQubit,
  LeakageExceeded,
  LogBranchAmbiguity,
  NoGadgetSite,
  InvalidLayout,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::IsAPath: return "IsAPath";
    case ErrorCode::NoBranchVertex: return "NoBranchVertex";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DeterminantMismatch: return "DeterminantMismatch";
    case ErrorCode::UnknownGate: return "UnknownGate";
    case ErrorCode::MissingParameter: return "MissingParameter";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::DuplicateTarget: return "DuplicateTarget";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotNearestNeighbor: return "NotNearestNeighbor";
    case ErrorCode::NotWrapEdge: return "NotWrapEdge";
    case ErrorCode::UnsupportedGraph: return "UnsupportedGraph";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::NonPrimitiveGate: return "NonPrimitiveGate";
    case ErrorCode::UnsupportedLogicalGate: return "UnsupportedLogicalGate";
    case ErrorCode::BlockedRoute: return "BlockedRoute";
    case ErrorCode::PathNotClear: return "PathNotClear";
    case ErrorCode::AncillaDirty: return "AncillaDirty";
    case ErrorCode::SameLogicalQubit: return "SameLogicalQubit";
    case ErrorCode::LeakageExceeded: return "LeakageExceeded";
    case ErrorCode::LogBranchAmbiguity: return "LogBranchAmbiguity";
    case ErrorCode::NoGadgetSite: return "NoGadgetSite";
    case ErrorCode::InvalidLayout: return "InvalidLayout";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

// 15 significant digits, the format used for all machine-readable floats.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

}  // namespace matchgraph
