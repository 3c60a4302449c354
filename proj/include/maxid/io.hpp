#pragma once

#include <string>
#include <vector>

#include "maxid/moving_maxima.hpp"

namespace maxid {

// Model documents are JSON with profiles as {"mass": m, "support": [[lag,
// value], ...]} and diagonal atoms as [[level, mass], ...]. The same parser
// accepts hand-written and machine-emitted files.
MovingMaximaModel parse_model(const std::string& json_text);
MovingMaximaModel load_model_file(const std::string& path);
std::string model_to_json(const MovingMaximaModel& model);

// Two-column sequence files: header "t,value", rows t = 1..n.
void write_sequence_csv(const std::string& path, const std::vector<double>& values);
std::vector<double> read_sequence_csv(const std::string& path);

}  // namespace maxid
