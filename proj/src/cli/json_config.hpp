// JSON config files: a flat object whose keys are the long option names
// (without leading dashes). Values given on the command line win.

#ifndef KEYGRAPH_CLI_JSON_CONFIG_HPP_
#define KEYGRAPH_CLI_JSON_CONFIG_HPP_

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace keygraph::cli {

using ConfigEntries = std::vector<std::pair<std::string, std::vector<std::string>>>;

inline std::string json_scalar(const std::string& key, const nlohmann::json& v) {
    if(v.is_string()) {
        return v.get<std::string>();
    }
    if(v.is_boolean()) {
        return v.get<bool>() ? "1" : "0";
    }
    if(v.is_number()) {
        return v.dump();
    }
    throw std::invalid_argument("unsupported JSON value for config key '" + key + "'");
}

inline ConfigEntries read_json_config(const std::string& path) {
    std::ifstream input(path);
    if(!input) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        input >> j;
    } catch(const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON config: ") + e.what());
    }
    if(!j.is_object()) {
        throw std::invalid_argument("JSON config must be an object");
    }
    ConfigEntries entries;
    for(const auto& [key, value] : j.items()) {
        std::vector<std::string> inputs;
        if(value.is_array()) {
            for(const auto& element : value) {
                inputs.push_back(json_scalar(key, element));
            }
        } else {
            inputs.push_back(json_scalar(key, value));
        }
        entries.emplace_back(key, std::move(inputs));
    }
    return entries;
}

/// Feeds config entries into options of `app` that were not set on the
/// command line.
inline void apply_json_config(CLI::App* app, const std::string& path) {
    for(const auto& [key, inputs] : read_json_config(path)) {
        CLI::Option* opt = app->get_option_no_throw("--" + key);
        if(opt == nullptr || key == "config") {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        if(opt->count() > 0) {
            continue;
        }
        for(const auto& in : inputs) {
            opt->add_result(in);
        }
        opt->run_callback();
    }
}

}  // namespace keygraph::cli

#endif  // KEYGRAPH_CLI_JSON_CONFIG_HPP_
