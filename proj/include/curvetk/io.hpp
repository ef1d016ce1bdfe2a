#pragma once

#include <string>

#include <json.hpp>

#include "curvetk/explorer.hpp"
#include "curvetk/stratdim.hpp"

namespace curvetk {

using json = nlohmann::json;

// Curve records: {"p":.., "n":.., "modulus":[..], "model":"hyperelliptic"|
// "artin-schreier", "f":[..], "genus":..}. Coefficients are integers over
// prime fields and [a0,a1,...] vectors otherwise; "modulus" is omitted for
// n = 1 and "f_den" carries the denominator of non-polynomial Artin-Schreier
// functions. Round-trips are bit-exact.
json field_to_json(const FieldSpec& s);
const FieldSpec& field_from_json(const json& j);

json element_to_json(const FieldElement& e);
FieldElement element_from_json(const json& j, const FieldSpec& s);

json poly_to_json(const Poly& f);
Poly poly_from_json(const json& j, const FieldSpec& s);

json curve_to_json(const HyperellipticCurve& c);
HyperellipticCurve curve_from_json(const json& j);

json as_cover_to_json(const ArtinSchreierCover& c);
ArtinSchreierCover as_cover_from_json(const json& j);

json prank_to_json(const PRankResult& r);
json aut_to_json(const ReducedAutGroup& g);

json witness_to_json(const WitnessRecord& w);
WitnessRecord witness_from_json(const json& j);

json census_to_json(const CensusResult& c);
// CSV with config echoed in leading "# key=value" comment lines and columns
// q,g,p_rank,aut_order,count,frequency_num,frequency_den.
std::string census_to_csv(const CensusResult& c);
CensusResult census_from_csv(const std::string& text);

json audit_to_json(const AuditReport& r);
std::string audit_to_table(const AuditReport& r);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace curvetk
