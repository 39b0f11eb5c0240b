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

#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "delp/priors.hpp"
#include "delp/score_matrix.hpp"

namespace delp {

inline constexpr std::size_t kFeatureCount = 7;

// Component order of the prior feature vector.
enum FeatureIndex : std::size_t {
  kIntercept = 0,
  kLogExposure = 1,
  kLogCorpusSize = 2,
  kLogPassageLength = 3,
  kLogGold = 4,
  kLogCultural = 5,
  kSameLanguage = 6,
};

const std::array<std::string, kFeatureCount>& feature_names();

struct FeatureVector {
  std::array<double, kFeatureCount> components{};
  double epsilon = 1e-6;
};

// [1, log(p_ret+e), log(p_db+e), log(len+e), log(p_gold+e), log(p_cult+e),
//  1[L_q = L_d]]. A missing prior cell throws DomainError naming it.
FeatureVector build_features(const PriorTable& priors, const LanguageCode& query_lang,
                             const LanguageCode& doc_lang, double epsilon);

struct RidgeOptions {
  bool regularize_intercept = true;  // column 0 is part of the penalty
};

// argmin ||y - X b||^2 + lambda ||b||^2 via a Cholesky solve of
// (X'X + lambda I) b = X'y. Columns that are identically zero carry no
// information and get coefficient 0. Throws DomainError when the system is
// singular (lambda = 0 with a rank-deficient design).
Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          const RidgeOptions& options = {});

// Which cells of the score matrix enter the fit.
enum class CalibrationPairs {
  cross_lingual,  // L_q != L_d; monolingual cells are scored out of sample
  all,
};

struct CalibrationOptions {
  double lambda = 1.0;
  double epsilon = 1e-6;
  bool regularize_intercept = true;
  CalibrationPairs pairs = CalibrationPairs::cross_lingual;
};

struct CalibrationModel {
  std::string encoder_id;
  std::array<double, kFeatureCount> beta{};
  double lambda = 1.0;
  double epsilon = 1e-6;
  double mu = 0.0;  // mean raw score over the calibration set
  bool regularize_intercept = true;
  std::vector<LangPair> pair_set;
};

struct Residualization {
  std::map<LangPair, double> residuals;  // every cell of the input matrix
  CalibrationModel model;
};

std::vector<LangPair> calibration_pairs(const PairScoreMatrix& scores, CalibrationPairs pairs);

Residualization residualize(const PairScoreMatrix& scores, const PriorTable& priors,
                            const CalibrationOptions& options = {});

// residual + mu for every cell.
PairScoreMatrix compute_delp(const PairScoreMatrix& scores, const PriorTable& priors,
                     const CalibrationOptions& options = {});
PairScoreMatrix delp_from(const Residualization& fit, ScoreKind kind = ScoreKind::delp);

nlohmann::json to_json(const CalibrationModel& model);

// Sample Pearson correlation. Throws DomainError on length mismatch, fewer
// than two values, or zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

struct CorrelationRow {
  std::string prior;  // "p_ret", "p_gold", "p_cult"
  double r_raw = 0.0;
  double r_delp = 0.0;
};

struct CorrelationOptions {
  double epsilon = 1e-6;
  CalibrationPairs pairs = CalibrationPairs::cross_lingual;
};

// Pearson r of log(prior + e) against the raw and the calibrated cells.
std::vector<CorrelationRow> correlation_report(const PairScoreMatrix& raw,
                                               const PairScoreMatrix& calibrated,
                                               const PriorTable& priors,
                                               const CorrelationOptions& options = {});

nlohmann::json to_json(const std::vector<CorrelationRow>& rows);
std::string to_csv(const std::vector<CorrelationRow>& rows);

}  // namespace delp
