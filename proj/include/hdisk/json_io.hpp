#pragma once

#include <json.hpp>

#include "hdisk/expr.hpp"

namespace hdisk {

// Structured (nlohmann) forms of the pinned JSON schema in expr.hpp.
nlohmann::json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const nlohmann::json& j);

// Complex scalars serialize as [re, im]; a bare number is accepted on input.
nlohmann::json cplx_to_json(cplx c);
cplx cplx_from_json(const nlohmann::json& j);

} // namespace hdisk
