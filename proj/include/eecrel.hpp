// Copyright 2026 The eecrel Authors
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

#ifndef EECREL_EECREL_HPP
#define EECREL_EECREL_HPP

#include "eecrel/csv.hpp"
#include "eecrel/device.hpp"
#include "eecrel/error.hpp"
#include "eecrel/figures.hpp"
#include "eecrel/gpd.hpp"
#include "eecrel/montecarlo.hpp"
#include "eecrel/random.hpp"
#include "eecrel/rate.hpp"
#include "eecrel/run.hpp"
#include "eecrel/scenario.hpp"
#include "eecrel/sequential.hpp"
#include "eecrel/system.hpp"
#include "eecrel/validate.hpp"

#endif // EECREL_EECREL_HPP
