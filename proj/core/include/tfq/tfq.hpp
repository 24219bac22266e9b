// Copyright 2026 The tfqsim Authors
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

#include "tfq/errors.hpp"
#include "tfq/joint.hpp"
#include "tfq/measurement.hpp"
#include "tfq/optics.hpp"
#include "tfq/oracle.hpp"
#include "tfq/photonic_state.hpp"
#include "tfq/protocol.hpp"
#include "tfq/spectral.hpp"
#include "tfq/states.hpp"
