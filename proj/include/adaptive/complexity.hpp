// Copyright 2026 The Adaptive Lab Authors.
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

#ifndef ADAPTIVE_COMPLEXITY_HPP_
#define ADAPTIVE_COMPLEXITY_HPP_

#include "adaptive/complexity/covering.hpp"
#include "adaptive/complexity/function_table.hpp"
#include "adaptive/complexity/rademacher.hpp"

#endif  // ADAPTIVE_COMPLEXITY_HPP_
