#pragma once

// JSON input documents and report serialization.
//
// Problem document:
//   {
//     "name": "...",
//     "index_base": 0 | 1,                  // numbering of rays in cones
//     "group": {"generators": ["x", "y"]}   // closure of the action pairs
//           or {"generators": ["x", "y"], "table": [[...]], "generator_elements": [1, 2]},
//     "action": {"generators": [{"matrix": [[...]], "lambda": ["1/2", 0, ...]}, ...]}
//            or {"assignment": [{"matrix", "lambda"} per element]}   // table mode only
//     "fan": {"dimension": d, "rays": [[...]], "max_cones": [[...]]}
//         or {"dimension": d, "rays": [[...]], "orbit_representatives": [[...]], "minus_one": true},
//     "resolution": {...} | "relative/path.json"              // optional
//   }
// Orbit representatives are expanded under the ray permutations of the
// generator matrices, and of -1 when "minus_one" is set.
//
// Resolution document: {"boundaries": [d_1, d_2, ...]} where d_n is a list of
// rank(n) rows of rank(n - 1) group ring elements written as strings in the
// generator names, e.g. "1 - x", "1 + xy", "-1 + x^3", "2*x".
//
// Lattice document: {"matrices": [[[...]] per group generator], "coefficients": "Z" | "Q/Z"}.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "equitor/pipeline.hpp"

namespace equitor {

struct Problem {
  std::string name;
  std::size_t index_base = 0;
  GroupPtr group;
  std::vector<AffineMap> assignment;
  Fan fan;
  ResolutionPtr resolution;  // null when absent
};

// The problem document; a fan is optional when allow_missing_fan is set.
Problem parse_problem(std::string_view text, const std::filesystem::path& base_dir = {},
                      bool allow_missing_fan = false);
Problem load_problem(const std::filesystem::path& file, bool allow_missing_fan = false);

// A bare fan document {"dimension", "rays", "max_cones"} or a problem document.
Fan load_fan(const std::filesystem::path& file, std::size_t* index_base = nullptr);

ResolutionPtr parse_resolution(std::string_view text, GroupPtr group, std::string name = "user");
ResolutionPtr load_resolution(const std::filesystem::path& file, GroupPtr group);

GroupRingElement parse_ring_element(const FiniteGroup& g, std::string_view text);
std::string format_ring_element(const FiniteGroup& g, const GroupRingElement& x);
// Resolution document of a resolution, for exporting computed resolutions.
std::string resolution_to_json(const Resolution& r);

struct LatticeInput {
  GLattice lattice;
  Coefficients kind = Coefficients::Integral;
};
LatticeInput parse_lattice(std::string_view text, GroupPtr group);
LatticeInput load_lattice(const std::filesystem::path& file, GroupPtr group);

std::string read_file(const std::filesystem::path& file);

// Stable field order; cones use index_base.
std::string report_to_json(const ObstructionReport& r, std::size_t index_base);
std::string report_to_text(const ObstructionReport& r, std::size_t index_base);

}  // namespace equitor
