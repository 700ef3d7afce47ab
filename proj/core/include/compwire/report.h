// Copyright 2026 The compwire Authors.
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

// JSON views of every report type. Field order is fixed (ordered_json) so
// serialized output is byte-stable. Conditional probabilities whose
// conditioning event has probability zero are written as the string
// "undefined".

#ifndef COMPWIRE_REPORT_H_
#define COMPWIRE_REPORT_H_

#include <nlohmann/json.hpp>

#include "compwire/boolfn.h"
#include "compwire/channels.h"
#include "compwire/invariance.h"

namespace compwire {

using Json = nlohmann::ordered_json;

Json to_json(const Point& point);
Json to_json(const MultilinearPolynomial& poly);
Json to_json(const InfluenceProfile& profile);
Json to_json(const JointDistribution& joint);
Json to_json(const DiscreteChannel& channel);
Json to_json(const MapEstimator& estimator);
Json to_json(const CommuteResult& result);
Json to_json(const NoiseModel& model);
Json to_json(const MomentReport& report);
Json to_json(const MonteCarloEstimate& estimate);
Json to_json(const InvarianceReport& report);
Json to_json(const AdditiveBoundDetail& detail);
Json to_json(const MultiplicativeBoundDetail& detail);
Json to_json(const LemmaCheck& check);
Json to_json(const LemmaReport& report);

// Full Fourier summary of one function: coefficients, mean, variance,
// degree, term count, influences, epsilon, Boolean-valuedness.
Json analysis_report(const MultilinearPolynomial& poly);

}  // namespace compwire

#endif  // COMPWIRE_REPORT_H_
