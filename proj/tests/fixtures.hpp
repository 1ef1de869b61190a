#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "autoeq/autoeq.hpp"

namespace testing_support {

struct SystemFixture {
    std::string name;
    bool solvable = false;
    autoeq::AlgebraicSystem system;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw autoeq::error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Blocks headed by `== name | solvable` or `== name | unsolvable`.
inline std::vector<SystemFixture> load_system_fixtures() {
    std::istringstream in(read_file(std::string(AUTOEQ_TEST_DATA) + "/groebner_systems.txt"));
    std::vector<SystemFixture> out;
    std::vector<std::string> bodies;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("== ", 0) == 0) {
            auto bar = line.find(" | ");
            out.push_back({line.substr(3, bar - 3), line.substr(bar + 3) == "solvable", {}});
            bodies.emplace_back();
        } else if (!bodies.empty()) {
            bodies.back() += line + "\n";
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].system = autoeq::parse_system(bodies[i]);
    return out;
}

}  // namespace testing_support
