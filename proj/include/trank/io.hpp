#pragma once

#include <string>

#include <json.hpp>

#include "trank/partition_tensor.hpp"
#include "trank/setcover.hpp"
#include "trank/tensor.hpp"
#include "trank/tripartition.hpp"

namespace trank {

using Json = nlohmann::json;

Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

Json sparse_tensor_to_json(const SparseTensor& t, std::uint64_t p);
SparseTensor sparse_tensor_from_json(const Json& j);

Json tripartition_to_json(const TripartitionInstance& inst);
TripartitionInstance tripartition_from_json(const Json& j);

Json setcover_to_json(const SetCoverInstance& inst);
SetCoverInstance setcover_from_json(const Json& j);

Json rank_bounds_to_json(const RankBounds& b);

// Throws ParameterError with position info on malformed input.
Json parse_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace trank
