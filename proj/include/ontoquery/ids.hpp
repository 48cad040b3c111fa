#pragma once

#include <cstddef>
#include <string>

namespace ontoquery {

/// Unpredictable lowercase hex identifier of 2 * bytes characters.
std::string random_hex_id(std::size_t bytes = 16);

}  // namespace ontoquery
