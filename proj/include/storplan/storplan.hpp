// Copyright 2026 The Storplan Authors
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

#ifndef STORPLAN_STORPLAN_HPP
#define STORPLAN_STORPLAN_HPP

#include "storplan/assets.hpp"
#include "storplan/branch_bound.hpp"
#include "storplan/calendar.hpp"
#include "storplan/chiller.hpp"
#include "storplan/chiller_cuts.hpp"
#include "storplan/config.hpp"
#include "storplan/dispatch.hpp"
#include "storplan/errors.hpp"
#include "storplan/lp.hpp"
#include "storplan/mpc.hpp"
#include "storplan/plant.hpp"
#include "storplan/profiles.hpp"
#include "storplan/report.hpp"
#include "storplan/simplex.hpp"
#include "storplan/sizing.hpp"
#include "storplan/storage.hpp"
#include "storplan/tariff.hpp"

#endif  // STORPLAN_STORPLAN_HPP
