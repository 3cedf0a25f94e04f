#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "gcn/codes.hpp"
#include "gcn/network.hpp"

// JSON file formats:
//   solution:      {"q","t","h","r","alpha","ell","eps","A":[[row-major ints],...]}
//   covering code: {"n","k","delta","alpha","q",
//                   "codewords":[{"basis":[row-major ints],"multiplicity":m},...]}
// Entries are the canonical integer codes of field elements.

namespace gcn {

std::string solution_to_json(const NetworkParams& params, const NetworkSolution& sol);
std::pair<NetworkParams, NetworkSolution> solution_from_json(const std::string& text);

std::string covering_code_to_json(const CoveringCode& code);
CoveringCode covering_code_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace gcn
