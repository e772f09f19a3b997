#pragma once

#include "hxplain/model.hpp"

#include <map>
#include <string>

namespace hxplain {

constexpr int kFormatVersion = 1;

struct ModelDocument {
    int format_version = kFormatVersion;
    PlanningProblem problem;
    std::map<std::string, std::string> metadata;
    friend bool operator==(const ModelDocument&, const ModelDocument&) = default;
};

// Throws ParseError for syntax and structure problems, ValidationError when the
// problem fails validate_problem.
ModelDocument parse_model(const std::string& text);
std::string serialize_model(const ModelDocument& doc);

ModelDocument load_model(const std::string& path);
void save_model(const ModelDocument& doc, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace hxplain
