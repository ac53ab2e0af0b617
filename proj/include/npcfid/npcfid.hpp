// Copyright 2026 The npcfid Authors
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

// Umbrella header.

#include "npcfid/calibration.hpp"
#include "npcfid/circuit.hpp"
#include "npcfid/error.hpp"
#include "npcfid/experiments.hpp"
#include "npcfid/generators.hpp"
#include "npcfid/json_ir.hpp"
#include "npcfid/metrics.hpp"
#include "npcfid/npc.hpp"
#include "npcfid/oracle.hpp"
#include "npcfid/qasm.hpp"
#include "npcfid/stats.hpp"
#include "npcfid/swap_template.hpp"
#include "npcfid/validate.hpp"
