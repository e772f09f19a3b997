#pragma once

#include "hxplain/model_io.hpp"

#include <map>
#include <string>
#include <vector>

namespace hxplain {

struct BenchmarkSpec {
    std::string family; // warehouse, rover, water_level, nav, nrs, city
    std::map<std::string, std::string> parameters;
};

const std::vector<std::string>& benchmark_families();

// Parameter names accepted by a family, with their defaults.
std::map<std::string, std::string> benchmark_defaults(const std::string& family);

// Throws InvalidSpec on unknown families, unknown parameters or bad values.
ModelDocument generate_benchmark(const BenchmarkSpec& spec);

// ASCII picture of grid families; an edge listing for the others.
std::string benchmark_layout(const BenchmarkSpec& spec);

} // namespace hxplain
