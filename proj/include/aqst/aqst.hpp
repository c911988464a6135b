// Copyright 2026 The AQST Authors
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

#include "aqst/error.hpp"
#include "aqst/version.hpp"

#include "aqst/core/algebra.hpp"
#include "aqst/core/layout.hpp"
#include "aqst/core/state.hpp"

#include "aqst/dynamics/integrator.hpp"
#include "aqst/dynamics/master.hpp"
#include "aqst/dynamics/model.hpp"
#include "aqst/dynamics/no_jump.hpp"
#include "aqst/dynamics/propagator.hpp"
#include "aqst/dynamics/random.hpp"
#include "aqst/dynamics/subspace.hpp"
#include "aqst/dynamics/trajectory.hpp"

#include "aqst/protocols/bilinear.hpp"
#include "aqst/protocols/cascaded.hpp"
#include "aqst/protocols/instance.hpp"
#include "aqst/protocols/minimal.hpp"

#include "aqst/cqed/cardinal.hpp"
#include "aqst/cqed/circuit.hpp"
#include "aqst/cqed/model.hpp"

#include "aqst/oracles/cascaded.hpp"
#include "aqst/oracles/cqed.hpp"
#include "aqst/oracles/minimal.hpp"

#include "aqst/diagnostics/manifold.hpp"
#include "aqst/diagnostics/orthogonality.hpp"
#include "aqst/diagnostics/separability.hpp"

#include "aqst/harness/config.hpp"
#include "aqst/harness/emit.hpp"
#include "aqst/harness/fit.hpp"
#include "aqst/harness/record.hpp"
#include "aqst/harness/reports.hpp"
#include "aqst/harness/run.hpp"
#include "aqst/harness/sweeps.hpp"
#include "aqst/harness/units.hpp"
