#pragma once

#include "gauss/factorizer.hpp"

#include <json.hpp>

namespace gauss {

/// JSON number when the value fits in a signed 64-bit integer, decimal string otherwise.
nlohmann::json int_json(const Int & v);

nlohmann::json to_json(const WitnessedResidue & r);
nlohmann::json to_json(const FactorReport & rep);

}  // namespace gauss
