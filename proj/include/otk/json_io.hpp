#pragma once

#include <string>

#include <json.hpp>

#include "otk/equivalence.hpp"
#include "otk/genericity.hpp"
#include "otk/invariants.hpp"
#include "otk/vacuum.hpp"

namespace otk {

using Json = nlohmann::ordered_json;

/// Serialises with every float printed as %.17g and non-finite floats as null.
/// Key order is insertion order, so equal inputs give byte-identical text.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const InvariantRecord& record);
Json to_json(const PairScore& score);
Json to_json(const GenericityReport& report);
Json to_json(const VacuumRelations& relations);
Json to_json(const Box& box);
Json to_json(const Signature& signature);
Json to_json(const Verdict& verdict);

Box box_from_json(const Json& j);
/// Throws Error on a malformed or unsupported signature document.
Signature signature_from_json(const Json& j);

}  // namespace otk
