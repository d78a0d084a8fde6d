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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qdyn/errors.hpp"
#include "qdyn/mitigation.hpp"

using namespace qdyn;

namespace {

double reference_curve(double t) { return std::pow(std::cos(0.07 * t), 2); }

PopulationSeries curve_series(double t_end, double dt, double stretch) {
  PopulationSeries s;
  for (double t = 0.0; t <= t_end + 1e-9; t += dt) {
    const double p = reference_curve(t / stretch);
    s.push(t, Eigen::Vector2d(p, 1 - p));
  }
  return s;
}

// Corrected-axis curve with alpha1 before `w` and alpha2 after.
PopulationSeries piecewise_stretched(double w, double a1, double a2, double raw_end, double dt) {
  PopulationSeries s;
  for (double r = 0.0; r <= raw_end + 1e-9; r += dt) {
    const double t = r <= a1 * w ? r / a1 : w + (r - a1 * w) / a2;
    const double p = reference_curve(t);
    s.push(r, Eigen::Vector2d(p, 1 - p));
  }
  return s;
}

}  // namespace

TEST(Alpha, RecoversSyntheticStretch) {
  auto ref = curve_series(20.0, 0.1, 1.0);
  for (double a : {1.2, 1.42, 1.8}) {
    auto vqa = curve_series(70.0, 0.1, a);
    auto res = extract_alpha(vqa, ref, 20.0);
    EXPECT_NEAR(res.alpha, a, 0.05);
    EXPECT_NEAR(res.t_cutoff, 20.0, 0.0);
    auto corrected = apply_alpha(vqa, res.alpha);
    EXPECT_NEAR(corrected.populations[100](0), reference_curve(corrected.times[100]), 5e-3);
  }
}

TEST(Alpha, IdenticalSeriesGivesOne) {
  auto s = curve_series(70.0, 0.1, 1.0);
  EXPECT_NEAR(extract_alpha(s, s, 20.0).alpha, 1.0, 1e-3);
}

TEST(Alpha, ObjectiveMatchesDenseQuadrature) {
  auto ref = curve_series(21.0, 0.37, 1.0);
  auto vqa = curve_series(60.0, 0.23, 1.3);
  const auto rc = ref.site(0), vc = vqa.site(0);
  for (double a : {0.8, 1.1, 1.7, 2.9}) {
    const int n = 400000;
    const double h = 20.0 / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s = (i + 0.5) * h;
      const double d = interpolate_linear(vqa.times, vc, a * s) - interpolate_linear(ref.times, rc, s);
      sum += d * d * h;
    }
    EXPECT_NEAR(alpha_objective(vqa, ref, 20.0, a), sum, 1e-6) << a;
  }
}

TEST(Alpha, ApplyAlphaRoundTrip) {
  auto s = curve_series(10.0, 0.5, 1.0);
  auto back = apply_alpha(apply_alpha(s, 1.7), 1.0 / 1.7);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(back.times[i], s.times[i], 1e-12);
    EXPECT_EQ(back.populations[i], s.populations[i]);
  }
  EXPECT_THROW(apply_alpha(s, 0.0), ConfigError);
}

TEST(Alpha, RefusesToExtrapolate) {
  auto ref = curve_series(20.0, 0.1, 1.0);
  auto short_vqa = curve_series(40.0, 0.1, 1.0);
  EXPECT_THROW(extract_alpha(short_vqa, ref, 20.0, {0.5, 3.0, 1e-3}), ConfigError);
  auto vqa = curve_series(70.0, 0.1, 1.0);
  EXPECT_THROW(extract_alpha(vqa, curve_series(10.0, 0.1, 1.0), 20.0), ConfigError);
  EXPECT_THROW(extract_alpha(vqa, ref, 20.0, {2.0, 1.0, 1e-3}), ConfigError);
}

TEST(Windowed, SingleWindowEqualsGlobal) {
  auto ref = curve_series(100.0, 0.1, 1.0);
  auto vqa = curve_series(70.0, 0.1, 1.42);
  auto runner = [&](const WindowStart& ws, double) {
    EXPECT_EQ(ws.index, 0u);
    return ref;
  };
  auto w = windowed_alpha(vqa, nullptr, runner, 1000.0, 20.0);
  ASSERT_EQ(w.windows.size(), 1u);
  EXPECT_NEAR(w.windows[0].alpha, extract_alpha(vqa, ref, 20.0).alpha, 1e-12);
}

TEST(Windowed, RecoversPiecewiseStretch) {
  auto vqa = piecewise_stretched(30.0, 1.2, 1.8, 200.0, 0.05);
  auto runner = [](const WindowStart& ws, double duration) {
    PopulationSeries s;
    for (double u = 0.0; u <= duration + 1e-9; u += 0.05) {
      const double p = reference_curve(ws.corrected_time + u);
      s.push(u, Eigen::Vector2d(p, 1 - p));
    }
    return s;
  };
  auto w = windowed_alpha(vqa, nullptr, runner, 30.0, 20.0, {0.5, 3.0, 1e-4});
  ASSERT_GE(w.windows.size(), 2u);
  EXPECT_NEAR(w.windows[0].alpha, 1.2, 0.1);
  EXPECT_NEAR(w.windows[1].alpha, 1.8, 0.1);
  EXPECT_NEAR(w.windows[1].window_start, w.windows[0].window_end, 1e-12);
  w.corrected.validate();
  for (std::size_t i = 0; i < w.corrected.size(); i += 50) {
    EXPECT_NEAR(w.corrected.populations[i](0), reference_curve(w.corrected.times[i]), 0.02);
  }
}

TEST(Windowed, RunnerFailureNamesWindow) {
  auto vqa = curve_series(200.0, 0.1, 1.0);
  auto runner = [](const WindowStart& ws, double) -> PopulationSeries {
    if (ws.index == 1) throw NumericalError("boom");
    return curve_series(40.0, 0.1, 1.0);
  };
  try {
    windowed_alpha(vqa, nullptr, runner, 30.0, 20.0);
    FAIL() << "expected an exception";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("window 1"), std::string::npos);
  }
}

TEST(Perturbation, SecondOrderResidual) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(4, 4), dm(4, 4);
  Eigen::VectorXd v0(4), dv(4);
  for (Eigen::Index i = 0; i < 16; ++i) {
    a.data()[i] = g(rng);
    dm.data()[i] = g(rng);
  }
  for (Eigen::Index i = 0; i < 4; ++i) {
    v0(i) = g(rng);
    dv(i) = g(rng);
  }
  Eigen::MatrixXd m0 = a * a.transpose() + Eigen::MatrixXd::Identity(4, 4);
  dm = (dm + dm.transpose()).eval();
  const Eigen::VectorXd x0 = m0.ldlt().solve(v0);
  auto residual = [&](double e) {
    Eigen::VectorXd full = (m0 + e * dm).lu().solve(v0 + e * dv);
    return (full - x0 - perturbation_diagnostics(m0, v0, e * dm, e * dv)).norm();
  };
  double e = 0.02;
  for (int k = 0; k < 3; ++k, e /= 2) {
    EXPECT_NEAR(residual(e) / residual(e / 2), 4.0, 0.8);
  }
}

TEST(Perturbation, DepolarizingSpecialCase) {
  Eigen::Matrix2d m0;
  m0 << 2.0, 0.3, 0.3, 1.0;
  Eigen::Vector2d v0(0.5, -0.2);
  const double lm = 0.1, lv = 0.04;
  auto d = perturbation_diagnostics(m0, v0, -lm * m0, -lv * v0);
  Eigen::Vector2d want = (lm - lv) * m0.inverse() * v0;
  EXPECT_LT((d - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(perturbation_diagnostics(Eigen::Matrix2d::Zero(), v0, m0, v0), NumericalError);
}

TEST(MitigationCsv, Format) {
  std::ostringstream out;
  MitigationResult r;
  r.alpha = 1.25;
  r.objective = 0.5;
  r.window_start = 0.0;
  write_mitigation_csv(out, {r});
  EXPECT_EQ(out.str(), "window_start_fs,alpha,objective\n0,1.25,0.5\n");
}
