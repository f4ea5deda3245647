#include "beurling/systems.hpp"

namespace beurling {

using nlohmann::json;

json system_to_json(const PrimeSystem& system) {
  json j;
  j["provenance"] = to_string(system.origin().kind);
  if (system.origin().kind == Provenance::Sampled) {
    j["seed"] = system.origin().seed;
    j["generator"] = system.origin().generator;
  }
  j["precision_bits"] = system.precision();
  j["primes"] = system.decimals();
  if (!system.labels().empty()) j["labels"] = system.labels();
  return j;
}

PrimeSystem system_from_json(const json& j) {
  Origin origin;
  origin.kind = provenance_from_string(j.at("provenance").get<std::string>());
  if (j.contains("seed")) origin.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("generator")) origin.generator = j.at("generator").get<std::string>();
  PrecisionPolicy policy;
  if (j.contains("precision_bits")) policy.start = j.at("precision_bits").get<mpfr_prec_t>();
  PrimeSystem s = PrimeSystem::from_decimals(j.at("primes").get<std::vector<std::string>>(),
                                             std::move(origin), policy);
  if (j.contains("labels")) s.set_labels(j.at("labels").get<std::vector<std::string>>());
  return s;
}

namespace {

json exponents_to_json(const ExponentVector& e) {
  json out = json::array();
  for (const Factor& f : e) out.push_back({f.prime, f.exponent});
  return out;
}

ExponentVector exponents_from_json(const json& j) {
  ExponentVector e;
  for (const auto& pair : j) e.push_back({pair.at(0).get<std::uint32_t>(), pair.at(1).get<std::uint32_t>()});
  return e;
}

}  // namespace

json snapshot_to_json(const IntegerSnapshot& snapshot) {
  json j;
  j["system"] = system_to_json(snapshot.system());
  j["bound"] = snapshot.bound();
  j["precision_cap"] = snapshot.policy().cap;
  json entries = json::array();
  for (const BeurlingInteger& b : snapshot.entries()) {
    entries.push_back({{"exponents", exponents_to_json(b.exponents)},
                       {"value", b.value.to_decimal(30)}});
  }
  j["entries"] = std::move(entries);
  return j;
}

IntegerSnapshot snapshot_from_json(const json& j) {
  const PrimeSystem system = system_from_json(j.at("system"));
  PrecisionPolicy policy{system.precision(), kDefaultPrecisionCap};
  if (j.contains("precision_cap")) policy.cap = j.at("precision_cap").get<mpfr_prec_t>();
  IntegerSnapshot snap = enumerate_integers(system, j.at("bound").get<double>(), policy);
  const json& entries = j.at("entries");
  if (entries.size() != snap.size())
    throw PreconditionError("snapshot entry count does not match re-enumeration");
  for (std::size_t i = 0; i < snap.size(); ++i) {
    if (exponents_from_json(entries[i].at("exponents")) != snap.entry(i).exponents)
      throw PreconditionError("snapshot entry " + std::to_string(i) +
                              " does not match re-enumeration");
  }
  return snap;
}

}  // namespace beurling
