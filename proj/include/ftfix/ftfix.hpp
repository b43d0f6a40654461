// Copyright 2026 The ftfix Authors
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

#include "ftfix/algo1.hpp"
#include "ftfix/algo2.hpp"
#include "ftfix/bench.hpp"
#include "ftfix/blueprint.hpp"
#include "ftfix/detect.hpp"
#include "ftfix/error.hpp"
#include "ftfix/fixation.hpp"
#include "ftfix/graph.hpp"
#include "ftfix/graph_io.hpp"
#include "ftfix/injector.hpp"
#include "ftfix/oracle.hpp"
#include "ftfix/switch_graph.hpp"
#include "ftfix/verify.hpp"
