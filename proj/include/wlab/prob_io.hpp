#pragma once

#include <string>

#include "wlab/prob.hpp"

namespace wlab {

// CSV value table, K rows x d columns, no header.
std::string variable_to_csv(const RandomVariable& x);
RandomVariable variable_from_csv(const std::string& text);

// JSON list of blocks, each a list of atom indices; validated on load.
std::string partition_to_json(const Partition& pi);
Partition partition_from_json(const std::string& text);

} // namespace wlab
