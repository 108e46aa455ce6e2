#pragma once

#include <iosfwd>
#include <string>

#include "freebend/assembly.hpp"

namespace freebend {

// JSON document for an AssemblySpec:
//   {
//     "genus": "Micrurus",
//     "segments": [
//       {
//         "label": "head-kink",
//         "L0_m": 0.1,
//         "R0_m": 0.00475,
//         "alpha0_deg": 89.0,
//         "lambda": 0.25,
//         "sign_pattern": [ {"sign": 0, "fraction": 0.35},
//                           {"sign": 1, "fraction": 0.30},
//                           {"sign": 0, "fraction": 0.35} ]
//       }, ...
//     ]
//   }
// Angles cross this boundary in degrees; everything in memory is radians.
// Schema violations raise ParseError naming the offending JSON path.
AssemblySpec read_assembly_spec(std::istream& in, const std::string& source_name);
AssemblySpec read_assembly_spec_file(const std::string& path);
void write_assembly_spec(std::ostream& out, const AssemblySpec& spec);

}  // namespace freebend
