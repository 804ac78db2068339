#include "qf2/script.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Quadratic forms and quaternion algebras in characteristic 2"};

    std::string script_file;
    qf2::ExecOptions opts;
    app.add_option("script", script_file, "Script file; '-' or absent reads standard input");
    app.add_flag("--json", opts.json, "Emit JSON instead of human-readable output");
    app.add_option("--seed", opts.seed, "Default seed for verify commands")
        ->default_val(std::uint64_t{0});
    app.add_option("--trials", opts.trials, "Default trial count for verify commands")
        ->default_val(20);
    app.add_option("--budget", opts.budget,
                   "Degree budget for searches (default: QF2_BUDGET or library default)");
    app.add_option("--timeout-ms", opts.timeout_ms, "Wall-clock limit for the whole script");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // usage errors map to exit code 1
    }

    if (opts.budget < 0) {
        if (const char* env = std::getenv("QF2_BUDGET")) opts.budget = std::atoi(env);
    }

    std::string text;
    if (script_file.empty() || script_file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(script_file);
        if (!in) {
            std::cerr << "cannot open " << script_file << "\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    qf2::ExecResult res = qf2::run_script(text, opts);
    std::cout << res.output;
    return res.exit_code;
}
