// Copyright 2026 The corpusforge Authors.
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


#include "corpusforge/error.hpp"

namespace forge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kUnknownBook: return "UnknownBook";
    case ErrorCode::kDuplicateVerseId: return "DuplicateVerseId";
    case ErrorCode::kUnparseableReference: return "UnparseableReference";
    case ErrorCode::kInvalidBookTable: return "InvalidBookTable";
    case ErrorCode::kInvalidTableEntry: return "InvalidTableEntry";
    case ErrorCode::kInvalidConfusionMap: return "InvalidConfusionMap";
    case ErrorCode::kInvalidNoiseConfig: return "InvalidNoiseConfig";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kIncompleteTable: return "IncompleteTable";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace forge
