// Copyright 2026 The qdyn Authors
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

// Ensembles of independent pure-state runs with deterministic member seeds.

#include <cstdint>
#include <functional>
#include <vector>

#include "qdyn/observables.hpp"

namespace qdyn {

struct EnsembleSpec {
  std::size_t trajectory_count = 100;
  std::uint64_t base_seed = 0;
  /// 0 selects std::thread::hardware_concurrency().
  std::size_t threads = 0;

  std::uint64_t member_seed(std::size_t index) const;
};

/// Runs one member: (member index, member seed) -> series.
using MemberRunner = std::function<PopulationSeries(std::size_t, std::uint64_t)>;

/// Members in index order; the result does not depend on the thread count.
std::vector<PopulationSeries> run_ensemble(const EnsembleSpec& spec, const MemberRunner& runner);

/// Pointwise mean of populations. `ipr` is recomputed from the mean
/// populations; `ipr_member_mean` is the mean of the member IPRs.
PopulationSeries ensemble_average(const std::vector<PopulationSeries>& members);

}  // namespace qdyn
