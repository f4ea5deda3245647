#include "beurling/json_io.hpp"

namespace beurling {

nlohmann::json interval_json(const CertReal& x, int digits) {
  return {{"lo", x.lo().to_string(digits, MPFR_RNDD)}, {"hi", x.hi().to_string(digits, MPFR_RNDU)}};
}

nlohmann::json interval_json(const CertComplex& z, int digits) {
  return {{"re", interval_json(z.re, digits)}, {"im", interval_json(z.im, digits)}};
}

}  // namespace beurling
