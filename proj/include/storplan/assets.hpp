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

#ifndef STORPLAN_ASSETS_HPP
#define STORPLAN_ASSETS_HPP

#include "storplan/chiller.hpp"
#include "storplan/storage.hpp"

namespace storplan {

/// The equipment a scenario dispatches: the base chiller on the cooling
/// loop, the dedicated charging chiller, the ice tank, and the battery.
struct AssetFleet {
  ChillerSpec base_chiller;
  ChillerSpec tes_chiller;
  TesSpec tes;
  BesSpec bes;

  void validate() const {
    base_chiller.validate();
    tes_chiller.validate();
    tes.validate();
    bes.validate();
  }
};

}  // namespace storplan

#endif  // STORPLAN_ASSETS_HPP
