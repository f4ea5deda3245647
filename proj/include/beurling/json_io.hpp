#pragma once

#include "json.hpp"

#include "beurling/numerics.hpp"

namespace beurling {

/// {"lo": ..., "hi": ...} as outward-rounded decimal strings.
nlohmann::json interval_json(const CertReal& x, int digits = 40);
nlohmann::json interval_json(const CertComplex& z, int digits = 40);

}  // namespace beurling
