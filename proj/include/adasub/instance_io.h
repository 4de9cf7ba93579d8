// Copyright 2023 The Authors.
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

// JSON instance files.
//
// A file either holds explicit sections
//
//   {
//     "name": "m1",
//     "items": [{"label": "a", "outcomes": ["good", "bad"],
//                "probabilities": [0.5, 0.5]}, ...],
//     "objective": {"kind": "count", "success_outcome": 0},
//     "constraint": {"kind": "uniform", "k": 1},
//     "declared_p": 1
//   }
//
// or a generator stanza that replaces them:
//
//   {"generator": {"kind": "random_small", "seed": 3}}
//   {"generator": {"kind": "matchmaking", "left": 2, "right": 2,
//                  "cap_left": 1, "cap_right": 1, "success_prob": 0.5}}
//
// An objective of kind "matchmaking" carries the same parameters and builds
// its own items and constraint, so those sections must be absent.
//
// Objective kinds: count, and, coverage, matchmaking. Constraint kinds:
// uniform, partition, intersection, explicit. Wherever an item is named
// (coverage sets, partition blocks, and-items, explicit sets) either its
// index or its label is accepted. declared_p is an integer or a string such
// as "3/2".

#ifndef ADASUB_INSTANCE_IO_H_
#define ADASUB_INSTANCE_IO_H_

#include <string>

#include "adasub/instances.h"

namespace adasub {

// Throws Error(kParse) for malformed documents ("parse error at <location>:
// ..." or "unknown objective kind ..."), and Error(kValidation) with a
// "validation failed: " prefix when the document parses but the instance
// breaks an invariant.
Instance ParseInstanceText(const std::string& text);

// ParseInstanceText on the file contents; unreadable files are kParse.
Instance ParseInstance(const std::string& path);

// Explicit-section JSON for the instance. Generated instances are written
// expanded. Throws kInvalidArgument for custom objectives or systems.
std::string SerializeInstance(const Instance& instance);

}  // namespace adasub

#endif  // ADASUB_INSTANCE_IO_H_
