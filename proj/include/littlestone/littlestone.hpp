//
// Copyright 2026 The Littlestone Lab Authors
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
//

#pragma once

#include "littlestone/bits.hpp"
#include "littlestone/core.hpp"
#include "littlestone/dims.hpp"
#include "littlestone/error.hpp"
#include "littlestone/learners.hpp"
#include "littlestone/online.hpp"
#include "littlestone/pec.hpp"
#include "littlestone/random.hpp"
#include "littlestone/sampling.hpp"
#include "littlestone/stability.hpp"
