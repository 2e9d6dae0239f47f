#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

/// Path of a bundled data file; tests run with STEINER_DATA_DIR set by CMake.
inline std::string data_path(const std::string& name) {
    const char* dir = std::getenv("STEINER_DATA_DIR");
    return std::string(dir ? dir : "data") + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
