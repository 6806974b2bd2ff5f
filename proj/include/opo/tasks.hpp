#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opo/config.hpp"
#include "opo/csv.hpp"

namespace opo {

// Figure presets carry only caption-stated values; grid ranges are preset defaults.
struct Preset {
    std::string name;
    std::string task;
    std::string caption;     // the caption parameters encoded
    std::function<void(RunConfig&)> apply;
};

const std::vector<Preset>& presets();
// Throws ConfigError for an unknown name.
const Preset& find_preset(const std::string& name);

struct TaskInfo {
    std::string name;
    std::string summary;
};
const std::vector<TaskInfo>& tasks();

// Runs cfg.task on an already validated config.
Table run_task(const RunConfig& cfg);

} // namespace opo
