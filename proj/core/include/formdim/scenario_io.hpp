#pragma once

#include <string>

#include "formdim/scenarios.hpp"

namespace formdim {

/// Parse the line-oriented sectioned scenario format:
///
///   [scenario]            name = <identifier>
///   [quantities]          <name> = <value> <unit-expr>
///   [dimension]           d = 1|2|3
///   [fields]              <name>: scalar|vector|matrix
///   [mapping]             <field> = <quantity> * <field-or-number>
///                         <field> = <field>            (dimensionless field)
///   [terms.<group>]       <name> = <expression>
///                         reference = <name>
///
/// '#' starts a comment; sections may appear in any order; every referenced
/// name must be declared. Errors carry line/column positions.
Scenario parse_scenario_text(const std::string& content, const std::string& default_name);

/// Read and parse a scenario file; the default scenario name is the file
/// stem.
Scenario parse_scenario(const std::string& path);

/// Render a scenario in the same format; parse(serialize(s)) is structurally
/// equal to s, and serialization is a fixed point of parse followed by
/// serialize.
std::string serialize_scenario(const Scenario& s);

} // namespace formdim
