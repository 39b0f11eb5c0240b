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

#include "delp/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "delp/error.hpp"

namespace delp {
namespace {

double pair_value(const PairPrior& prior, const char* name, const LangPair& pair) {
  auto it = prior.find(pair);
  if (it == prior.end()) throw DomainError(std::string("prior ") + name + " undefined for " + pair.str());
  return it->second;
}

double lang_value(const LanguagePrior& prior, const char* name, const LangPair& pair) {
  auto it = prior.find(pair.doc);
  if (it == prior.end()) {
    throw DomainError(std::string("prior ") + name + " undefined for L_d=" + pair.doc.str() +
                      " (pair " + pair.str() + ")");
  }
  return it->second;
}

double log_eps(double value, double epsilon, const char* name, const LangPair& pair) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string("prior ") + name + " must be a finite non-negative value at " +
                      pair.str());
  }
  return std::log(value + epsilon);
}

}  // namespace

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = {
      "intercept", "log_p_ret", "log_p_db", "log_passage_len", "log_p_gold", "log_p_cult", "same_lang"};
  return names;
}

FeatureVector build_features(const PriorTable& priors, const LanguageCode& query_lang,
                             const LanguageCode& doc_lang, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be > 0");
  const LangPair pair{query_lang, doc_lang};
  FeatureVector f;
  f.epsilon = epsilon;
  f.components[kIntercept] = 1.0;
  f.components[kLogExposure] = log_eps(pair_value(priors.p_ret, "p_ret", pair), epsilon, "p_ret", pair);
  f.components[kLogCorpusSize] = log_eps(lang_value(priors.p_db, "p_db", pair), epsilon, "p_db", pair);
  f.components[kLogPassageLength] =
      log_eps(lang_value(priors.passage_len, "passage_len", pair), epsilon, "passage_len", pair);
  f.components[kLogGold] = log_eps(pair_value(priors.p_gold, "p_gold", pair), epsilon, "p_gold", pair);
  f.components[kLogCultural] =
      log_eps(lang_value(priors.p_cult, "p_cult", pair), epsilon, "p_cult", pair);
  f.components[kSameLanguage] = pair.same_lang() ? 1.0 : 0.0;
  return f;
}

Eigen::VectorXd ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                          const RidgeOptions& options) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 0");
  if (X.rows() < 1) throw DomainError("ridge fit needs at least one observation");
  if (X.rows() != y.size()) throw DomainError("design matrix and response differ in length");
  if (!X.allFinite() || !y.allFinite()) throw DomainError("non-finite value in ridge inputs");

  const Eigen::Index p = X.cols();
  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < p; ++j) {
    if ((X.col(j).array() != 0.0).any()) active.push_back(j);
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  if (active.empty()) return beta;

  const auto k = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd Xa(X.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) Xa.col(j) = X.col(active[j]);

  Eigen::MatrixXd A = Xa.transpose() * Xa;
  const Eigen::VectorXd b = Xa.transpose() * y;
  for (Eigen::Index j = 0; j < k; ++j) {
    if (active[j] == 0 && !options.regularize_intercept) continue;
    A(j, j) += lambda;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
    throw DomainError("ridge system is singular (rank-deficient design); use lambda > 0");
  }
  Eigen::VectorXd sol = llt.solve(b);
  // One step of iterative refinement, then hold the normal equations to 1e-12
  // relative to their scale.
  sol += llt.solve(b - A * sol);
  const double scale =
      std::max(1.0, A.cwiseAbs().rowwise().sum().maxCoeff() * sol.cwiseAbs().maxCoeff() +
                        b.cwiseAbs().maxCoeff());
  const double residual = (A * sol - b).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-12 * scale)) {
    throw DomainError("ridge normal equations not satisfied to tolerance (residual " +
                      std::to_string(residual) + "); the system is ill-conditioned");
  }
  for (Eigen::Index j = 0; j < k; ++j) beta(active[j]) = sol(j);
  return beta;
}

std::vector<LangPair> calibration_pairs(const PairScoreMatrix& scores, CalibrationPairs pairs) {
  std::vector<LangPair> out;
  for (const auto& [pair, s] : scores.cells()) {
    if (pairs == CalibrationPairs::cross_lingual && pair.same_lang()) continue;
    out.push_back(pair);
  }
  return out;
}

Residualization residualize(const PairScoreMatrix& scores, const PriorTable& priors,
                            const CalibrationOptions& options) {
  const auto pairs = calibration_pairs(scores, options.pairs);
  if (pairs.empty()) throw DomainError("calibration set is empty");

  const auto n = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(kFeatureCount));
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto f = build_features(priors, pairs[i].query, pairs[i].doc, options.epsilon);
    for (std::size_t j = 0; j < kFeatureCount; ++j) X(i, static_cast<Eigen::Index>(j)) = f.components[j];
    y(i) = scores.at(pairs[i]);
  }
  const Eigen::VectorXd beta =
      ridge_fit(X, y, options.lambda, RidgeOptions{options.regularize_intercept});

  Residualization out;
  auto& m = out.model;
  m.encoder_id = scores.encoder_id();
  for (std::size_t j = 0; j < kFeatureCount; ++j) m.beta[j] = beta(static_cast<Eigen::Index>(j));
  m.lambda = options.lambda;
  m.epsilon = options.epsilon;
  m.regularize_intercept = options.regularize_intercept;
  m.pair_set = pairs;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) sum += y(i);
  m.mu = sum / static_cast<double>(n);

  for (const auto& [pair, s] : scores.cells()) {
    const auto f = build_features(priors, pair.query, pair.doc, options.epsilon);
    double fitted = 0.0;
    for (std::size_t j = 0; j < kFeatureCount; ++j) fitted += f.components[j] * m.beta[j];
    out.residuals[pair] = s - fitted;
  }
  return out;
}

PairScoreMatrix delp_from(const Residualization& fit, ScoreKind kind) {
  PairScoreMatrix out(fit.model.encoder_id, kind);
  for (const auto& [pair, r] : fit.residuals) out.set(pair, r + fit.model.mu);
  return out;
}

PairScoreMatrix compute_delp(const PairScoreMatrix& scores, const PriorTable& priors,
                     const CalibrationOptions& options) {
  return delp_from(residualize(scores, priors, options));
}

nlohmann::json to_json(const CalibrationModel& m) {
  nlohmann::json beta = nlohmann::json::object();
  for (std::size_t j = 0; j < kFeatureCount; ++j) beta[feature_names()[j]] = m.beta[j];
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : m.pair_set) pairs.push_back({p.query.str(), p.doc.str()});
  return {{"encoder_id", m.encoder_id},
          {"beta", beta},
          {"beta_ordered", std::vector<double>(m.beta.begin(), m.beta.end())},
          {"lambda", m.lambda},
          {"epsilon", m.epsilon},
          {"mu", m.mu},
          {"regularize_intercept", m.regularize_intercept},
          {"pair_set", pairs}};
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("pearson: inputs differ in length");
  if (a.size() < 2) throw DomainError("pearson: need at least two values");
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw DomainError("pearson: zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<CorrelationRow> correlation_report(const PairScoreMatrix& raw,
                                               const PairScoreMatrix& calibrated,
                                               const PriorTable& priors,
                                               const CorrelationOptions& options) {
  if (raw.cells().size() != calibrated.cells().size()) {
    throw IntegrityError("raw and calibrated matrices cover different pair sets");
  }
  for (const auto& [pair, s] : raw.cells()) {
    if (!calibrated.contains(pair)) {
      throw IntegrityError("calibrated matrix lacks cell " + pair.str());
    }
  }
  const auto pairs = calibration_pairs(raw, options.pairs);
  std::vector<double> raw_v, cal_v;
  for (const auto& p : pairs) {
    raw_v.push_back(raw.at(p));
    cal_v.push_back(calibrated.at(p));
  }

  std::vector<CorrelationRow> rows;
  const auto covariate = [&](const char* name, auto&& value_of) {
    std::vector<double> x;
    x.reserve(pairs.size());
    for (const auto& p : pairs) x.push_back(log_eps(value_of(p), options.epsilon, name, p));
    rows.push_back({name, pearson(x, raw_v), pearson(x, cal_v)});
  };
  covariate("p_ret", [&](const LangPair& p) { return pair_value(priors.p_ret, "p_ret", p); });
  covariate("p_gold", [&](const LangPair& p) { return pair_value(priors.p_gold, "p_gold", p); });
  covariate("p_cult", [&](const LangPair& p) { return lang_value(priors.p_cult, "p_cult", p); });
  return rows;
}

nlohmann::json to_json(const std::vector<CorrelationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) out.push_back({{"prior", r.prior}, {"r_raw", r.r_raw}, {"r_delp", r.r_delp}});
  return out;
}

std::string to_csv(const std::vector<CorrelationRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "prior,r_raw,r_delp\n";
  for (const auto& r : rows) out << r.prior << ',' << r.r_raw << ',' << r.r_delp << '\n';
  return out.str();
}

}  // namespace delp
