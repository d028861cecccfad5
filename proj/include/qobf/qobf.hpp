// Copyright 2026 The qobf Authors
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

#include "qobf/adversary.hpp"
#include "qobf/backend.hpp"
#include "qobf/benchmarks.hpp"
#include "qobf/circuit.hpp"
#include "qobf/circuit_io.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"
#include "qobf/harness.hpp"
#include "qobf/obfuscation.hpp"
#include "qobf/optimizer.hpp"
#include "qobf/profiles.hpp"
#include "qobf/rng.hpp"
#include "qobf/statevector.hpp"
#include "qobf/trace_io.hpp"
#include "qobf/transpile.hpp"
