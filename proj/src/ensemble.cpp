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

#include "qdyn/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qdyn/errors.hpp"
#include "qdyn/units.hpp"

namespace qdyn {

std::uint64_t EnsembleSpec::member_seed(std::size_t index) const {
  return derive_seed(base_seed, index);
}

std::vector<PopulationSeries> run_ensemble(const EnsembleSpec& spec, const MemberRunner& runner) {
  if (spec.trajectory_count == 0) throw ConfigError("ensemble needs at least one member");
  if (!runner) throw ConfigError("ensemble member runner is empty");
  std::vector<PopulationSeries> members(spec.trajectory_count);
  std::size_t workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, spec.trajectory_count);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < spec.trajectory_count; i = next++) {
      try {
        members[i] = runner(i, spec.member_seed(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = spec.trajectory_count;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return members;
}

PopulationSeries ensemble_average(const std::vector<PopulationSeries>& members) {
  if (members.empty()) throw ConfigError("cannot average an empty ensemble");
  const auto& first = members.front();
  first.validate();
  for (const auto& m : members) {
    m.validate();
    if (m.size() != first.size() || m.num_sites() != first.num_sites()) {
      throw ConfigError("ensemble members have different time grids");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (std::abs(m.times[i] - first.times[i]) > 1e-9) {
        throw ConfigError("ensemble members have different time grids");
      }
    }
  }
  const double count = static_cast<double>(members.size());
  PopulationSeries out;
  out.ipr_member_mean.emplace();
  for (std::size_t i = 0; i < first.size(); ++i) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(first.populations[i].size());
    double member_ipr = 0.0;
    for (const auto& m : members) {
      p += m.populations[i];
      member_ipr += m.ipr[i];
    }
    out.push(first.times[i], p / count);
    out.ipr_member_mean->push_back(member_ipr / count);
  }
  return out;
}

}  // namespace qdyn
