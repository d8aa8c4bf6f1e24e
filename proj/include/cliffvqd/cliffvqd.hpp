// Copyright 2026 The cliffvqd Authors
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

#include "cliffvqd/ansatz.hpp"
#include "cliffvqd/cost.hpp"
#include "cliffvqd/error.hpp"
#include "cliffvqd/exact.hpp"
#include "cliffvqd/io.hpp"
#include "cliffvqd/linalg.hpp"
#include "cliffvqd/pauli.hpp"
#include "cliffvqd/refine.hpp"
#include "cliffvqd/results.hpp"
#include "cliffvqd/search.hpp"
#include "cliffvqd/tableau.hpp"
#include "cliffvqd/validate.hpp"
