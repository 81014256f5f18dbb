#include "superkernel/dsl.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace dsl = superkernel::dsl;

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with Weil algebras, superdomains and their morphisms"};
    app.require_subcommand(1);

    dsl::Options options;
    std::string file;
    std::string field = "R";
    int max_degree = 0;

    auto* run = app.add_subcommand("run", "Run a script ('-' reads standard input)");
    run->add_option("file", file, "Script file")->required();
    run->add_flag("--json", options.json, "Print one JSON document instead of text");
    run->add_option("--seed", options.seed, "Seed for randomized checks")->capture_default_str();
    run->add_option("--max-degree", max_degree, "Degree cap for ideal computations (0: none)")
        ->check(CLI::NonNegativeNumber);
    run->add_option("--field", field, "Default ground field")->check(CLI::IsMember({"R", "C"}))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : dsl::kUsageError;
    }

    if (max_degree > 0) options.max_degree = max_degree;
    options.field = field == "C" ? superkernel::Field::Complex : superkernel::Field::Real;

    std::ostringstream source;
    if (file == "-") {
        source << std::cin.rdbuf();
    } else {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read '" << file << "'\n";
            return dsl::kUsageError;
        }
        source << in.rdbuf();
    }

    auto report = dsl::run(source.str(), options);
    std::cout << report.output;
    std::cerr << report.diagnostics;
    return report.exit_code;
}
