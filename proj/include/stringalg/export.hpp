#pragma once

#include "stringalg/configurations.hpp"
#include "stringalg/families.hpp"
#include "stringalg/radical.hpp"

#include <json.hpp>

#include <string>

namespace stringalg {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json to_json(const Presentation& p, const Representation& m);
Json to_json(const Presentation& p, const MorphismMatrix& f);
Json to_json(const ValidationReport& r);
Json to_json(const Presentation& p, const StringModule& m);
Json to_json(const Presentation& p, const AlmostSplitSequence& s);
Json to_json(const Presentation& p, const TauOrbit& orbit);
Json to_json(const Depth& d);
Json to_json(const ARQuiver& q);                                  // nodes, arrows, tauPairs
Json to_json(const ARQuiver& q, const RadicalProfile& profile);
Json to_json(const ARQuiver& q, const Degree& d);
Json to_json(const Presentation& p, const CountingQuiver& c);
Json to_json(const Presentation& p, const PatternMatch& m);
Json to_json(const ARQuiver& q, const AuditReport& r);
Json to_json(const ARQuiver& q, const FamilyWitness& w);

// Solid irreducible arrows, dotted tau edges, '|' marking projective (left) and injective (right).
std::string to_dot(const ARQuiver& q);

} // namespace stringalg
