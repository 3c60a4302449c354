#include "maxid/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxid {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
    throw std::invalid_argument("model schema: " + what);
}

}  // namespace

MovingMaximaModel parse_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model schema: not valid JSON: ") +
                                    e.what());
    }
    if (!doc.is_object()) schema_error("top level must be an object");

    std::vector<Profile> profiles;
    if (doc.contains("profiles")) {
        if (!doc["profiles"].is_array()) schema_error("'profiles' must be an array");
        for (const json& jp : doc["profiles"]) {
            if (!jp.is_object() || !jp.contains("mass") || !jp.contains("support"))
                schema_error("each profile needs 'mass' and 'support'");
            Profile p;
            if (!jp["mass"].is_number()) schema_error("profile mass must be a number");
            p.mass_rate = jp["mass"].get<double>();
            if (!jp["support"].is_array()) schema_error("profile support must be an array");
            for (const json& je : jp["support"]) {
                if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
                    !je[1].is_number())
                    schema_error("support entries must be [lag, value] pairs");
                p.support.emplace_back(je[0].get<int>(), je[1].get<double>());
            }
            profiles.push_back(std::move(p));
        }
    }
    std::vector<DiagonalAtom> diagonal;
    if (doc.contains("diagonal")) {
        if (!doc["diagonal"].is_array()) schema_error("'diagonal' must be an array");
        for (const json& jd : doc["diagonal"]) {
            if (!jd.is_array() || jd.size() != 2 || !jd[0].is_number() ||
                !jd[1].is_number())
                schema_error("diagonal entries must be [level, mass] pairs");
            diagonal.push_back({jd[0].get<double>(), jd[1].get<double>()});
        }
    }
    return MovingMaximaModel(std::move(profiles), std::move(diagonal));
}

MovingMaximaModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string model_to_json(const MovingMaximaModel& model) {
    json doc;
    doc["profiles"] = json::array();
    for (const Profile& p : model.profiles()) {
        json jp;
        jp["mass"] = p.mass_rate;
        jp["support"] = json::array();
        for (const auto& [lag, value] : p.support)
            jp["support"].push_back(json::array({lag, value}));
        doc["profiles"].push_back(jp);
    }
    doc["diagonal"] = json::array();
    for (const DiagonalAtom& d : model.diagonal())
        doc["diagonal"].push_back(json::array({d.level, d.mass}));
    return doc.dump(2);
}

void write_sequence_csv(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sequence file: " + path);
    out << "t,value\n";
    char buf[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1, values[i]);
        out << buf;
    }
}

std::vector<double> read_sequence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("sequence file is empty: " + path);
    std::vector<double> values;
    std::size_t expected_t = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("sequence file: missing comma in row");
        const std::size_t t = std::stoull(line.substr(0, comma));
        if (t != expected_t)
            throw std::invalid_argument("sequence file: rows must be t = 1..n in order");
        values.push_back(std::stod(line.substr(comma + 1)));
        ++expected_t;
    }
    return values;
}

}  // namespace maxid
