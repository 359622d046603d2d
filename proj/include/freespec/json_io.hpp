#pragma once

#include "freespec/autanalysis.hpp"
#include "freespec/ballmin.hpp"
#include "freespec/cstar.hpp"
#include "freespec/freefun.hpp"
#include "freespec/freesets.hpp"

#include <json.hpp>

#include <string>

namespace freespec {

using Json = nlohmann::json;

// Wire formats.  Matrix: {"rows": n, "cols": m, "data": [[re, im], ...]}
// row-major.  Tuple: {"g": g, "entries": [matrix, ...]}.  Context:
// {"s": s, "C1": matrix, "C2": matrix}.  Jet: {"b": [[re,im],[re,im]],
// "L": matrix}.  Series: {"g": g, "trunc": d, "terms": [{"word": [1-based
// letters], "coeff": matrix}, ...]}.

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j);

Json context_to_json(const PencilContext& ctx);
PencilContext context_from_json(const Json& j);

Json jet_to_json(const AutJet& jet);
AutJet jet_from_json(const Json& j);

Json series_to_json(const PowerSeries& f);
PowerSeries series_from_json(const Json& j);

Json classification_to_json(const Classification& c);
Json quad_to_json(const QuadClassification& q);
Json hypotheses_to_json(const HypothesesReport& rep);
Json certificate_to_json(const BallMinimalCertificate& cert);
Json jet_classification_to_json(const JetClassification& c);
Json ball_agreement_to_json(const BallAgreementReport& rep);
Json circular_probe_to_json(const CircularProbeReport& rep);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace freespec
