#pragma once

#include <json.hpp>
#include <string>

#include "satr/atcore.hpp"

namespace satr {

using json = nlohmann::json;

ATGraph instance_from_json(const json& j);
json instance_to_json(const ATGraph& a);

std::string dummy_name(const Graph& g, int d);
PlanarizationCertificate certificate_from_json(const ATGraph& a, const json& j);
json certificate_to_json(const ATGraph& a, PlanarizationCertificate w);

json verdict_to_json(const ATGraph& a, const Verdict& v);

ATGraph read_instance_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace satr
