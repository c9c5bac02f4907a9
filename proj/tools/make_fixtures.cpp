#include "fixtures.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures DIR\n";
        return 2;
    }
    std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);
    for (auto& f : shiftsym::fixtures::example_files()) std::ofstream(dir / f.name) << shiftsym::dump_json(f.content);
    return 0;
}
