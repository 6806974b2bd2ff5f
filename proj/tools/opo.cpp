#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "opo/config.hpp"
#include "opo/csv.hpp"
#include "opo/tasks.hpp"

namespace {

void report(const char* kind, int code, const std::string& message)
{
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["code"] = code;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string listing()
{
    std::string s = "tasks:\n";
    for (const auto& t : opo::tasks()) s += "  " + t.name + "  " + t.summary + "\n";
    s += "presets:\n";
    for (const auto& p : opo::presets()) s += "  " + p.name + "  (" + p.task + ") " + p.caption + "\n";
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantum-noise calculator for a detuned triply resonant parametric oscillator"};
    app.set_version_flag("--version", std::string(OPO_VERSION));
    std::string task, config_path, out_path, preset;
    long long seed = -1;
    bool list = false;
    app.add_option("task", task, "task name (see --list)");
    app.add_option("--config", config_path, "key=value parameter file with [sections]");
    app.add_option("--out", out_path, "output file (.csv or .json); standard output when absent");
    app.add_option("--seed", seed, "seed for stochastic tasks")->check(CLI::NonNegativeNumber);
    app.add_option("--preset", preset, "figure preset, e.g. fig6-top");
    app.add_flag("--list", list, "list tasks and presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report("config", 1, e.what());
        return 1;
    }

    if (list) {
        std::cout << listing();
        return 0;
    }

    try {
        opo::RunConfig cfg;
        if (preset.empty() && task.rfind("fig", 0) == 0) {
            // `opo fig6-bottom` runs that panel's figure task
            preset = task;
            task = opo::find_preset(preset).task;
        }
        if (!preset.empty()) {
            const auto& p = opo::find_preset(preset);
            p.apply(cfg);
            cfg.preset = p.name;
            cfg.task = p.task;
        }
        std::string file_task;
        if (!config_path.empty()) {
            const std::string before = cfg.task;
            cfg.task.clear();
            opo::apply_config_file(cfg, config_path);
            file_task = cfg.task;
            cfg.task = before;
        }
        if (!task.empty() && !file_task.empty() && task != file_task)
            throw opo::ConfigError("task '" + task + "' conflicts with task '" + file_task + "' in the config");
        if (!task.empty()) cfg.task = task;
        else if (!file_task.empty()) cfg.task = file_task;
        if (cfg.task.empty()) throw opo::ConfigError("no task given");
        if (seed >= 0) cfg.sde.seed = std::uint64_t(seed);
        opo::validate(cfg);

        const auto table = opo::run_task(cfg);
        const auto params = cfg.echo();
        const bool json = ends_with(out_path, ".json");
        const std::string text = json ? opo::render_json(table, cfg.task, params)
                                      : opo::render_csv(table, cfg.task, params);
        if (out_path.empty()) {
            std::cout << text;
            std::cout.flush();
            if (!std::cout) throw opo::IoError("cannot write to standard output");
        } else {
            opo::write_atomic(out_path, text);
        }
        return 0;
    } catch (const opo::Error& e) {
        report(e.kind(), e.exit_code(), e.what());
        return e.exit_code();
    } catch (const std::exception& e) {
        report("numerical", 3, e.what());
        return 3;
    }
}
