// Copyright 2026 The friendlab Authors
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

#include "friendlab/bell.hpp"
#include "friendlab/core/counter_rng.hpp"
#include "friendlab/core/measurement.hpp"
#include "friendlab/core/operator.hpp"
#include "friendlab/core/projector.hpp"
#include "friendlab/core/register_layout.hpp"
#include "friendlab/core/state_vector.hpp"
#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"
#include "friendlab/observables.hpp"
#include "friendlab/scenarios/brukner.hpp"
#include "friendlab/scenarios/epr_undo.hpp"
#include "friendlab/scenarios/frauchiger_renner.hpp"
#include "friendlab/scenarios/report.hpp"
