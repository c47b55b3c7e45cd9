// Copyright 2026 The rrtsel Authors.
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

// Umbrella header for the selection library (no HTTP or CLI dependencies).

#pragma once

#include "rrtsel/error.hpp"
#include "rrtsel/offer.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/registry.hpp"
#include "rrtsel/rrt.hpp"
#include "rrtsel/scenario.hpp"
#include "rrtsel/scores.hpp"
#include "rrtsel/selection.hpp"
