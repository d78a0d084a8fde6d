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

#include "qdyn/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "qdyn/errors.hpp"

namespace qdyn {

namespace {

constexpr int kCoarseScanPoints = 64;

double span(const PopulationSeries& s) { return s.times.back() - s.times.front(); }

void check_series(const PopulationSeries& s, std::size_t site, const char* what) {
  s.validate();
  if (s.size() < 2) throw ConfigError(std::string(what) + " series needs at least two points");
  if (site >= s.num_sites()) throw ConfigError("site index out of range");
}

}  // namespace

void AlphaRange::validate() const {
  if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("alpha range must satisfy 0 < lo < hi");
  if (!(tolerance > 0.0)) throw ConfigError("alpha tolerance must be positive");
}

double alpha_objective(const PopulationSeries& vqa, const PopulationSeries& ref, double t_cutoff,
                       double alpha, std::size_t site) {
  const double t0 = vqa.times.front();
  const double r0 = ref.times.front();
  const auto v = vqa.site(site);
  const auto r = ref.site(site);

  std::vector<double> knots{0.0, t_cutoff};
  for (double t : vqa.times) {
    const double s = (t - t0) / alpha;
    if (s > 0.0 && s < t_cutoff) knots.push_back(s);
  }
  for (double t : ref.times) {
    const double s = t - r0;
    if (s > 0.0 && s < t_cutoff) knots.push_back(s);
  }
  std::sort(knots.begin(), knots.end());

  auto diff = [&](double s) {
    return interpolate_linear(vqa.times, v, t0 + alpha * s) - interpolate_linear(ref.times, r, r0 + s);
  };
  // The difference is linear between knots, so Simpson's rule is exact.
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    if (b - a <= 0.0) continue;
    const double da = diff(a);
    const double dm = diff((a + b) / 2.0);
    const double db = diff(b);
    total += (b - a) / 6.0 * (da * da + 4.0 * dm * dm + db * db);
  }
  return total;
}

MitigationResult extract_alpha(const PopulationSeries& vqa, const PopulationSeries& ref,
                               double t_cutoff, const AlphaRange& range, std::size_t site) {
  range.validate();
  check_series(vqa, site, "VQA");
  check_series(ref, site, "reference");
  if (!(t_cutoff > 0.0)) throw ConfigError("t_cutoff must be positive");
  const double slack = 1e-9 * std::max(1.0, t_cutoff);
  if (span(ref) + slack < t_cutoff) {
    throw ConfigError("reference series does not cover the cut-off time");
  }
  if (span(vqa) + slack < range.hi * t_cutoff) {
    throw ConfigError("VQA series must cover alpha_max * t_cutoff = " +
                      std::to_string(range.hi * t_cutoff) + " fs");
  }
  auto J = [&](double a) { return alpha_objective(vqa, ref, t_cutoff, a, site); };

  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> grid(kCoarseScanPoints + 1);
  for (int i = 0; i <= kCoarseScanPoints; ++i) {
    grid[i] = range.lo + (range.hi - range.lo) * i / kCoarseScanPoints;
    const double value = J(grid[i]);
    if (value < best_value) {
      best_value = value;
      best = static_cast<std::size_t>(i);
    }
  }
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min<std::size_t>(best + 1, kCoarseScanPoints)];
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = J(c);
  double fd = J(d);
  while (b - a > range.tolerance / 10.0) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = J(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = J(d);
    }
  }
  MitigationResult out;
  out.alpha = (a + b) / 2.0;
  out.objective = J(out.alpha);
  if (best_value < out.objective) {
    out.alpha = grid[best];
    out.objective = best_value;
  }
  out.t_cutoff = t_cutoff;
  out.window_start = vqa.times.front();
  out.window_end = vqa.times.front() + span(vqa) / out.alpha;
  return out;
}

PopulationSeries apply_alpha(const PopulationSeries& raw, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (raw.times.empty()) throw ConfigError("cannot rescale an empty series");
  PopulationSeries out = raw;
  for (double& t : out.times) t /= alpha;
  return out;
}

WindowedMitigation windowed_alpha(const PopulationSeries& vqa,
                                  const std::vector<StateVector>* states,
                                  const TrotterRunner& runner, double window_length,
                                  double t_cutoff, const AlphaRange& range, std::size_t site) {
  range.validate();
  check_series(vqa, site, "VQA");
  if (!(t_cutoff > 0.0) || window_length < t_cutoff) {
    throw ConfigError("window length must be at least the cut-off time");
  }
  if (states && states->size() != vqa.size()) {
    throw ConfigError("VQA states must align with the VQA series");
  }
  if (!runner) throw ConfigError("windowed mitigation needs a reference runner");

  WindowedMitigation out;
  std::vector<std::size_t> begin_idx;     // first raw sample of each window
  std::vector<std::size_t> begin_rows;    // corrected rows before each window
  std::size_t raw_idx = 0;
  double corrected = vqa.times.front();
  const std::size_t last = vqa.size() - 1;
  auto emit = [&](std::size_t from, std::size_t to, double raw_start, double alpha) {
    for (std::size_t i = from; i < to; ++i) {
      out.corrected.times.push_back(corrected + (vqa.times[i] - raw_start) / alpha);
      out.corrected.populations.push_back(vqa.populations[i]);
      out.corrected.ipr.push_back(vqa.ipr[i]);
    }
  };

  while (raw_idx < last) {
    const double raw_start = vqa.times[raw_idx];
    PopulationSeries tail;
    tail.times.assign(vqa.times.begin() + raw_idx, vqa.times.end());
    tail.populations.assign(vqa.populations.begin() + raw_idx, vqa.populations.end());
    tail.ipr.assign(vqa.ipr.begin() + raw_idx, vqa.ipr.end());

    AlphaRange local = range;
    local.hi = std::min(range.hi, span(tail) / t_cutoff);
    if (local.hi <= local.lo) {
      if (out.windows.empty()) {
        throw ConfigError("VQA series is too short for the first mitigation window");
      }
      // Too little data left for a fit: the previous window absorbs the rest.
      MitigationResult& prev = out.windows.back();
      out.corrected.times.resize(begin_rows.back());
      out.corrected.populations.resize(begin_rows.back());
      out.corrected.ipr.resize(begin_rows.back());
      raw_idx = begin_idx.back();
      corrected = prev.window_start;
      emit(raw_idx, last, vqa.times[raw_idx], prev.alpha);
      corrected += (vqa.times[last] - vqa.times[raw_idx]) / prev.alpha;
      prev.window_end = corrected;
      break;
    }
    MitigationResult res;
    try {
      WindowStart ws{out.windows.size(), raw_start, corrected,
                     states ? &(*states)[raw_idx] : nullptr};
      const PopulationSeries ref = runner(ws, t_cutoff);
      res = extract_alpha(tail, ref, t_cutoff, local, site);
    } catch (const ConfigError& e) {
      throw ConfigError("window " + std::to_string(out.windows.size()) + ": " + e.what());
    } catch (const NumericalError& e) {
      throw NumericalError("window " + std::to_string(out.windows.size()) + ": " + e.what());
    }

    // Raw sample closest to the window's end on the corrected axis.
    const double raw_end = raw_start + res.alpha * window_length;
    std::size_t end_idx = raw_idx + 1;
    while (end_idx < last && std::abs(vqa.times[end_idx + 1] - raw_end) <
                                 std::abs(vqa.times[end_idx] - raw_end)) {
      ++end_idx;
    }
    begin_idx.push_back(raw_idx);
    begin_rows.push_back(out.corrected.size());
    emit(raw_idx, end_idx, raw_start, res.alpha);
    res.window_start = corrected;
    corrected += (vqa.times[end_idx] - raw_start) / res.alpha;
    res.window_end = corrected;
    out.windows.push_back(res);
    raw_idx = end_idx;
  }
  out.corrected.times.push_back(corrected);
  out.corrected.populations.push_back(vqa.populations[last]);
  out.corrected.ipr.push_back(vqa.ipr[last]);
  return out;
}

Eigen::VectorXd perturbation_diagnostics(const Eigen::MatrixXd& M0, const Eigen::VectorXd& V0,
                                         const Eigen::MatrixXd& dM, const Eigen::VectorXd& dV) {
  if (M0.rows() != M0.cols() || M0.rows() != V0.size() || dM.rows() != M0.rows() ||
      dM.cols() != M0.cols() || dV.size() != V0.size()) {
    throw ConfigError("perturbation diagnostics: dimension mismatch");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M0);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s(s.size() - 1) > 0.0) || s(0) / s(s.size() - 1) > 1e12) {
    throw NumericalError("M0 is singular");
  }
  const auto lu = M0.fullPivLu();
  const Eigen::VectorXd theta_dot0 = lu.solve(V0);
  return lu.solve(dV) - lu.solve(dM * theta_dot0);
}

void write_mitigation_csv(std::ostream& out, const std::vector<MitigationResult>& results) {
  out << "window_start_fs,alpha,objective\n";
  char buf[96];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.window_start, r.alpha, r.objective);
    out << buf;
  }
}

}  // namespace qdyn
