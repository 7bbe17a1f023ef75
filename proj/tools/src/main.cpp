#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    using namespace relcone::cli;

    CLI::App app{"Relative tangent cones of curve branches"};
    app.require_subcommand(1);

    JobSpec spec;
    long trunc = 0;
    long max_conductor = 0;
    std::string format = "json";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", spec.input_path, "Input JSON file, - for stdin")->required();
        sub->add_option("-o,--output", spec.output_path, "Write the report here instead of stdout");
        sub->add_option("--trunc", trunc, "Treat inputs as known only below t^N")->check(CLI::PositiveNumber);
        sub->add_option("--max-conductor", max_conductor, "Largest cyclotomic conductor allowed (default 240)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    std::vector<CLI::Option*> cone_oracle_flags;
    auto add_oracle = [&](CLI::App* sub) {
        return std::vector<CLI::Option*>{
            sub->add_option("--radius", spec.oracle.radius, "Sampling radius r (<= 0.1)"),
            sub->add_option("--samples", spec.oracle.samples, "Number of sampled parameter pairs"),
            sub->add_option("--seed", spec.oracle.seed, "Random seed"),
            sub->add_option("--tol", spec.oracle.tol, "Soundness tolerance"),
        };
    };

    auto* cone = app.add_subcommand("cone", "Cone of two sets of branches at a common point");
    add_common(cone);
    cone_oracle_flags = add_oracle(cone);
    cone->add_flag("--validate", spec.validate, "Check the result against sampled secants");
    auto* join = app.add_subcommand("join", "Join report of two curves");
    add_common(join);
    auto* oracle = app.add_subcommand("oracle", "Validate a given cone against sampled secants");
    add_common(oracle);
    add_oracle(oracle);
    auto* normalize = app.add_subcommand("normalize", "Standard forms and frames of branch pairs");
    add_common(normalize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInput;
    }

    spec.command = *parse_command(app.get_subcommands().front()->get_name());
    if (spec.command == Command::Cone && !spec.validate) {
        for (const auto* opt : cone_oracle_flags) {
            if (opt->count() > 0) {
                std::cerr << "relcone cone: " << opt->get_name() << " only applies with --validate\n";
                return kInput;
            }
        }
    }
    if (trunc > 0) spec.trunc = trunc;
    if (max_conductor > 0) spec.max_conductor = max_conductor;
    spec.format = format == "text" ? Format::Text : Format::Json;

    const RunResult result = run(spec);
    if (!result.error.empty()) std::cerr << "relcone " << result.error << "\n";
    if (!result.output.empty()) {
        if (spec.output_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream out(spec.output_path);
            if (!out) {
                std::cerr << "relcone: cannot write " << spec.output_path << "\n";
                return kInput;
            }
            out << result.output;
        }
    }
    return result.exit_code;
}
