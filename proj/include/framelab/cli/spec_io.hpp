#pragma once

#include <string>
#include <vector>

#include "framelab/measure.hpp"
#include "framelab/realline.hpp"

namespace framelab::cli {

// Parsers throw SpecParseError with the source name and the offending field or line.

CircleMeasure parse_measure(const std::string& text, const std::string& source = "<string>");
FunctionSpec parse_function(const std::string& text, const std::string& source = "<string>");
RealAtomicMeasure parse_real_measure(const std::string& text,
                                     const std::string& source = "<string>");
std::vector<RealValue> parse_values(const std::string& text,
                                    const std::string& source = "<string>");

/// Reads a whole file; throws FileNotFound.
std::string read_file(const std::string& path);

CircleMeasure load_measure(const std::string& path);
FunctionSpec load_function(const std::string& path);
RealAtomicMeasure load_real_measure(const std::string& path);
std::vector<RealValue> load_values(const std::string& path);

std::string to_json(const CircleMeasure& measure);
std::string to_json(const FunctionSpec& f);

}  // namespace framelab::cli
