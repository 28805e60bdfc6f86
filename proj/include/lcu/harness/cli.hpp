#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcu/harness/config.hpp"

namespace lcu::harness {

/// Command-line surface: one CLI11 subcommand per entry in subcommands(), one --key per schema entry.
class CommandLine {
public:
    CommandLine()
        : app_(std::make_unique<CLI::App>("Randomized LCU lab: sampled estimators, analog ancillas and walk search", "lcu_lab"))
    {
        app_->require_subcommand(1);
        for (const auto& name : subcommands()) {
            auto sp = std::make_unique<Sub>();
            Sub& s = *sp;
            s.name = name;
            s.app = app_->add_subcommand(name, "run " + name);
            s.app->add_option("--config", s.file, "flat key=value file; flags override it")->multi_option_policy(CLI::MultiOptionPolicy::Throw);
            for (const auto& k : schema(name)) {
                CLI::Option* opt = nullptr;
                if (k.type == KeyType::flag) {
                    opt = s.app->add_flag("--" + k.name, s.flags[k.name], k.help + " (default " + k.fallback + ")");
                } else {
                    opt = s.app->add_option("--" + k.name, s.values[k.name], k.help + " (" + to_string(k.type) + ", default '" + k.fallback + "')");
                }
                opt->multi_option_policy(CLI::MultiOptionPolicy::Throw);
                s.options[k.name] = opt;
            }
            subs_.push_back(std::move(sp));
        }
    }

    CLI::App& app() { return *app_; }

    /// Parses argv; CLI11 errors other than help requests become ConfigError.
    ExperimentConfig parse(int argc, const char* const* argv)
    {
        try {
            app_->parse(argc, argv);
        } catch (const CLI::Success&) {
            throw;
        } catch (const CLI::ParseError& e) {
            throw ConfigError(e.what());
        }
        return resolved();
    }

    ExperimentConfig parse(const std::vector<std::string>& args)
    {
        std::vector<const char*> argv{"lcu_lab"};
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        return parse(static_cast<int>(argv.size()), argv.data());
    }

private:
    struct Sub {
        std::string name;
        CLI::App* app = nullptr;
        std::string file;
        std::map<std::string, std::string> values;
        std::map<std::string, bool> flags;
        std::map<std::string, CLI::Option*> options;
    };

    ExperimentConfig resolved()
    {
        for (auto& sp : subs_) {
            Sub& s = *sp;
            if (!s.app->parsed()) {
                continue;
            }
            std::map<std::string, std::string> flags;
            for (const auto& [key, opt] : s.options) {
                if (opt->count() > 0) {
                    const auto f = s.flags.find(key);
                    flags[key] = f != s.flags.end() ? (f->second ? "true" : "false") : s.values[key];
                }
            }
            const auto file = s.file.empty() ? std::map<std::string, std::string>{} : read_config_file(s.file);
            return resolve_config(s.name, file, flags);
        }
        throw ConfigError("no subcommand given");
    }

    std::unique_ptr<CLI::App> app_;
    std::vector<std::unique_ptr<Sub>> subs_;
};

/// Parses a full argument list (without the program name).
inline ExperimentConfig parse_config(const std::vector<std::string>& args) { return CommandLine().parse(args); }

} // namespace lcu::harness
