#pragma once

#include "nsurf/triangulation.hpp"

#include <fstream>
#include <sstream>
#include <string>

#ifndef NSURF_FIXTURES
#error "NSURF_FIXTURES must name the fixture directory"
#endif

namespace nsurf::testing {

inline Triangulation load_fixture(const std::string& name)
{
    std::ifstream in(std::string(NSURF_FIXTURES) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return parse_triangulation(s.str());
}

} // namespace nsurf::testing
