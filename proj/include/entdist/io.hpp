#pragma once

// JSON documents for states, channels and results. Complex numbers are [re, im] pairs;
// a plain number is read as a real entry.

#include "entdist/classify.hpp"
#include "entdist/distribution.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace entdist {

using Json = nlohmann::ordered_json;

/// Malformed or physically invalid input data.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
CMatrix matrix_from_json(const Json& j);
CVector vector_from_json(const Json& j);

/// {"dims": [...], "matrix": [[[re, im], ...], ...]} or {"dims": [...], "vector": [[re, im], ...]}.
DensityMatrix state_from_json(const Json& j);
Json state_to_json(const DensityMatrix& rho);
DensityMatrix read_state(const std::string& path);

/// {"label": ..., "pauli": [p0, p1, p2, p3]}, {"label": ..., "kraus": [matrix, ...]} or {"identity": d}.
KrausChannel channel_from_json(const Json& j);
Json channel_to_json(const KrausChannel& ch);
KrausChannel read_channel(const std::string& path);

Json to_json(const OptimizerConfig& cfg);
Json to_json(const MeasureResult& r);
Json to_json(const ClassReport& r);
Json to_json(const DistributionOutcome& o);
Json to_json(const ProtocolClass& p);
Json to_json(const BoundReport& r);
Json to_json(const SandwichReport& r);

/// Header embedded in every output document: tool version, seed, optimizer config, command.
Json run_record(const std::vector<std::string>& command, const OptimizerConfig& cfg);

}  // namespace entdist
