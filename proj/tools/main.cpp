#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tha/commands.hpp"
#include "tha/config.hpp"

namespace {

void usage(std::ostream& os) {
    os << "usage: tha <command> [--config FILE] [--key value]...\n"
          "commands: fidelity keyrate optimize-thermal separable shutter\n"
          "          fig3 fig4 fig5 selfcheck\n"
          "Config keys double as CLI flags, e.g. --mu_D 0.1 --L0_km 25.\n"
          "Output goes to stdout unless --output FILE is given.\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        usage(args.empty() ? std::cerr : std::cout);
        return args.empty() ? tha::kValidationError : tha::kOk;
    }
    const std::string command = args[0];

    tha::RunConfig cfg;
    try {
        // First pass: config file, so flags can override it.
        for (std::size_t i = 1; i + 1 < args.size() + 1; ++i) {
            if (args[i] == "--config") {
                if (i + 1 >= args.size()) throw tha::ConfigError("--config needs a file argument");
                std::ifstream in(args[i + 1]);
                if (!in) throw tha::ConfigError("cannot open config file '" + args[i + 1] + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                cfg = tha::parse_config(ss.str());
                ++i;
            }
        }
        for (std::size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--config") {
                ++i;
                continue;
            }
            if (args[i].rfind("--", 0) != 0) {
                throw tha::ConfigError("unexpected argument '" + args[i] + "'");
            }
            const std::string key = args[i].substr(2);
            if (i + 1 >= args.size()) throw tha::ConfigError("flag --" + key + " needs a value");
            tha::apply_override(cfg, key, args[i + 1], "flag --" + key);
            ++i;
        }
        tha::validate_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        usage(std::cerr);
        return tha::kValidationError;
    }

    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file '" << cfg.output_path << "'\n";
            return tha::kValidationError;
        }
        return tha::run_command(command, cfg, out, std::cerr);
    }
    return tha::run_command(command, cfg, std::cout, std::cerr);
}
