// Copyright 2026 The delp Authors.
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

#include <gtest/gtest.h>

#include <cmath>

#include "delp/calibrate.hpp"
#include "delp/error.hpp"
#include "delp/fixtures.hpp"
#include "oracles.hpp"

using namespace delp;

namespace {

LanguageCode L(const char* c) { return LanguageSet::standard().parse(c); }

// Scores that are exactly linear in the features of the fixture priors.
PairScoreMatrix linear_scores(const fixtures::CalibrationFixture& f, double shift = 0.0) {
  PairScoreMatrix m("lin", ScoreKind::raw_mlrs);
  for (const auto& [pair, s] : f.scores.cells()) {
    const auto x = build_features(f.priors, pair.query, pair.doc, 1e-6);
    double y = shift;
    for (std::size_t j = 0; j < kFeatureCount; ++j) y += x.components[j] * f.beta[j];
    m.set(pair, y);
  }
  return m;
}

PairScoreMatrix shifted(const PairScoreMatrix& m, double c) {
  PairScoreMatrix out(m.encoder_id(), m.kind());
  for (const auto& [p, s] : m.cells()) out.set(p, s + c);
  return out;
}

}  // namespace

TEST(Features, LogWithEpsilonAndIndicator) {
  auto f = fixtures::synthetic_calibration();
  f.priors.p_ret[{L("ko"), L("ja")}] = 0.0;
  const auto x = build_features(f.priors, L("ko"), L("ja"), 1e-6);
  EXPECT_NEAR(x.components[kLogExposure], -13.8155, 1e-4);
  EXPECT_DOUBLE_EQ(x.components[kIntercept], 1.0);
  EXPECT_DOUBLE_EQ(x.components[kSameLanguage], 0.0);
  EXPECT_DOUBLE_EQ(build_features(f.priors, L("ko"), L("ko"), 1e-6).components[kSameLanguage], 1.0);
  EXPECT_NEAR(x.components[kLogPassageLength], std::log(f.priors.passage_len.at(L("ja"))), 1e-6);
  EXPECT_THROW(build_features(f.priors, L("ko"), L("ja"), 0.0), DomainError);
}

TEST(Ridge, OneColumnExamples) {
  Eigen::MatrixXd X(3, 1);
  X << 1, 2, 3;
  Eigen::VectorXd y(3);
  y << 2, 4, 6;
  EXPECT_NEAR(ridge_fit(X, y, 0.0)(0), 2.0, 1e-12);
  EXPECT_NEAR(ridge_fit(X, y, 14.0)(0), 1.0, 1e-12);
  EXPECT_LT(ridge_fit(X, y, 1e9).norm(), 1e-6);
}

TEST(Ridge, SingularSystemIsDomainError) {
  Eigen::MatrixXd X(3, 2);
  X << 1, 2, 1, 2, 1, 2;
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  EXPECT_THROW(ridge_fit(X, y, 0.0), DomainError);
  EXPECT_NO_THROW(ridge_fit(X, y, 0.1));
  EXPECT_THROW(ridge_fit(X, y, -1.0), DomainError);
}

TEST(Ridge, ZeroColumnGetsZero) {
  Eigen::MatrixXd X(3, 2);
  X << 1, 0, 1, 0, 1, 0;
  Eigen::VectorXd y(3);
  y << 3, 3, 3;
  const auto b = ridge_fit(X, y, 0.0);
  EXPECT_NEAR(b(0), 3.0, 1e-12);
  EXPECT_EQ(b(1), 0.0);
}

TEST(Ridge, MatchesGaussianOracle) {
  fixtures::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 30, p = 6;
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    oracle::Dense D{n, p, std::vector<double>(n * p)};
    std::vector<double> yy(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        X(i, j) = D.at(i, j) = j == 0 ? 1.0 : rng.uniform(-5, 5);
      }
      y(i) = yy[i] = rng.uniform(0, 100);
    }
    for (double lambda : {0.0, 0.5, 10.0}) {
      for (bool reg : {true, false}) {
        const auto b = ridge_fit(X, y, lambda, RidgeOptions{reg});
        const auto o = oracle::ridge(D, yy, lambda, reg);
        for (std::size_t j = 0; j < p; ++j) EXPECT_NEAR(b(j), o[j], 1e-8 * (1 + std::abs(o[j])));
      }
    }
  }
}

TEST(Residualize, ExactLinearDataLeavesNoResidual) {
  const auto f = fixtures::synthetic_calibration();
  const auto fit = residualize(linear_scores(f), f.priors, {0.0, 1e-6, true});
  for (const auto& [pair, r] : fit.residuals) {
    if (!pair.same_lang()) {
      EXPECT_NEAR(r, 0.0, 1e-9) << pair.str();
    }
  }
  for (std::size_t j = 0; j < kSameLanguage; ++j) EXPECT_NEAR(fit.model.beta[j], f.beta[j], 1e-8);
}

TEST(Residualize, DelpMeanEqualsMuAtLambdaZero) {
  const auto f = fixtures::synthetic_calibration();
  const auto fit = residualize(f.scores, f.priors, {0.0, 1e-6, true});
  const auto d = delp_from(fit);
  double sum = 0, raw = 0;
  for (const auto& p : fit.model.pair_set) {
    sum += d.at(p);
    raw += f.scores.at(p);
  }
  const double n = static_cast<double>(fit.model.pair_set.size());
  EXPECT_NEAR(sum / n, fit.model.mu, 1e-9);
  EXPECT_NEAR(raw / n, fit.model.mu, 1e-12);
}

TEST(Residualize, ResidualsOrthogonalToFeatures) {
  const auto f = fixtures::synthetic_calibration();
  const auto fit = residualize(f.scores, f.priors, {0.0, 1e-6, true});
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    double dot = 0, scale = 0;
    for (const auto& p : fit.model.pair_set) {
      const double x = build_features(f.priors, p.query, p.doc, 1e-6).components[j];
      dot += x * fit.residuals.at(p);
      scale += std::abs(x * f.scores.at(p));
    }
    EXPECT_NEAR(dot, 0.0, 1e-9 * (1 + scale)) << feature_names()[j];
  }
}

TEST(Residualize, ConstantShiftInvariance) {
  const auto f = fixtures::synthetic_calibration();
  for (const auto& opts : {CalibrationOptions{0.0, 1e-6, true}, CalibrationOptions{1.0, 1e-6, false}}) {
    const auto a = residualize(f.scores, f.priors, opts);
    const auto b = residualize(shifted(f.scores, 7.5), f.priors, opts);
    for (const auto& [pair, r] : a.residuals) EXPECT_NEAR(b.residuals.at(pair), r, 1e-8);
    EXPECT_NEAR(b.model.mu, a.model.mu + 7.5, 1e-9);
  }
}

TEST(Residualize, CrossLingualPairsByDefault) {
  const auto f = fixtures::synthetic_calibration();
  const auto fit = residualize(f.scores, f.priors);
  for (const auto& p : fit.model.pair_set) EXPECT_FALSE(p.same_lang());
  EXPECT_EQ(fit.model.beta[kSameLanguage], 0.0);
  EXPECT_EQ(fit.residuals.size(), f.scores.size());
  const auto all = calibration_pairs(f.scores, CalibrationPairs::all);
  EXPECT_EQ(all.size(), f.scores.size());
}

TEST(Pearson, Examples) {
  const std::vector<double> a = {1, 2, 3}, b = {2, 1, 4};
  EXPECT_NEAR(pearson(a, b), 6.0 / std::sqrt(84.0), 1e-12);
  EXPECT_NEAR(pearson(a, b), oracle::pearson(a, b), 1e-12);
  EXPECT_NEAR(pearson(a, a), 1.0, 1e-12);
  const std::vector<double> flat = {5, 5, 5};
  EXPECT_THROW(pearson(a, flat), DomainError);
}

TEST(CorrelationReport, ThreeRows) {
  const auto f = fixtures::synthetic_calibration();
  const auto d = compute_delp(f.scores, f.priors, {0.0, 1e-6, true});
  const auto rows = correlation_report(f.scores, d, f.priors);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].prior, "p_ret");
  EXPECT_GT(rows[0].r_raw, 0.5);
  for (const auto& r : rows) EXPECT_LT(std::abs(r.r_delp), 1e-9) << r.prior;
  EXPECT_NE(to_csv(rows).find("p_gold"), std::string::npos);
}
