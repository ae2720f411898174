#pragma once

#include <string>

#include "chevkit/ring.hpp"

namespace chevkit {

// Root of the shipped data files; CHEVKIT_FIXTURE_DIR overrides it.
std::string data_dir();
json load_json_file(const std::string& path);

}  // namespace chevkit
