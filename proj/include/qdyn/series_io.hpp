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

// PopulationSeries CSV: `t_fs,p_1..p_N,ipr[,ipr_member_mean]`.

#include <iosfwd>
#include <string>

#include "qdyn/observables.hpp"

namespace qdyn {

void write_series_csv(std::ostream& out, const PopulationSeries& s);
void write_series_csv(const std::string& path, const PopulationSeries& s);
PopulationSeries read_series_csv(std::istream& in);
PopulationSeries read_series_csv(const std::string& path);

}  // namespace qdyn
