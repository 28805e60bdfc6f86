#include <cstdio>
#include <fstream>
#include <iostream>

#include "lcu/harness/cli.hpp"
#include "lcu/harness/runner.hpp"

namespace {

using namespace lcu;
using namespace lcu::harness;

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot write '" + path + "'");
    }
    f << text;
}

int report_error(const char* kind, const std::exception& e, int code)
{
    std::cerr << "lcu_lab: " << kind << ": " << e.what() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CommandLine cli;
    try {
        const ExperimentConfig cfg = cli.parse(argc, argv);
        const RunReport rep = run(cfg);
        const std::string doc = rep.document.dump(2) + "\n";
        const std::string out = cfg.text("out");
        if (out.empty()) {
            std::cout << doc;
        } else {
            write_text(out, doc);
        }
        if (!rep.csv.empty()) {
            if (out.empty()) {
                std::cout << rep.csv;
            } else {
                write_text(out + ".csv", rep.csv);
            }
        }
        if (cfg.has("trace") && cfg.flag("trace")) {
            write_text(out.empty() ? std::string("lcu_trace.csv") : out + ".trace.csv", trace_csv(rep.trace));
        }
        return kExitOk;
    } catch (const CLI::Success& e) {
        return cli.app().exit(e);
    } catch (const ConfigError& e) {
        return report_error("config error", e, kExitConfig);
    } catch (const NormUnderflowError& e) {
        return report_error("precondition violation", e, kExitPrecondition);
    } catch (const PreconditionError& e) {
        return report_error("precondition violation", e, kExitPrecondition);
    } catch (const ConvergenceError& e) {
        return report_error("convergence failure", e, kExitConvergence);
    }
}
