// Copyright 2026 The lipagg Authors
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

// Umbrella header.

#ifndef LIPAGG_LIPAGG_H_
#define LIPAGG_LIPAGG_H_

#include "lipagg/audit.h"
#include "lipagg/core.h"
#include "lipagg/data_io.h"
#include "lipagg/estimators.h"
#include "lipagg/lp.h"
#include "lipagg/mechanisms.h"
#include "lipagg/random.h"
#include "lipagg/simulation.h"
#include "lipagg/solver.h"

#endif  // LIPAGG_LIPAGG_H_
