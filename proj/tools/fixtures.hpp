#pragma once

// Example inputs shared by the fixture generator and the selftest battery.

#include "shiftsym/io.hpp"

#include <string>
#include <vector>

namespace shiftsym::fixtures {

struct File {
    std::string name;
    Json content;
};

// Deterministic; map files reference their models by file name.
std::vector<File> example_files();

}  // namespace shiftsym::fixtures
