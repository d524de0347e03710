#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
    using fractile::cli::Options;
    CLI::App app{"Self-similar tilings, compatibility checks and tube formulas"};
    app.require_subcommand(1);
    Options o;
    std::string methods;

    auto common = [&](CLI::App* sub) {
        sub->add_option("spec", o.spec, "system specification (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--tol", o.tol, "coordinate tolerance");
        sub->add_option("--out", o.out, "output path (stdout when omitted)");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"svg", "geo", "csv", "report"}));
    };
    auto* check = app.add_subcommand("check", "decide OSC, TSC, NTC, triviality and compatibility");
    common(check);
    check->add_option("--depth", o.depth, "envelope depth (default 5)");

    auto* tile = app.add_subcommand("tile", "enumerate tiles and write SVG or a geometry dump");
    common(tile);
    tile->add_option("--depth", o.depth, "maximum word length (default 5)");
    tile->add_option("--min-diam", o.min_diam, "stop expanding words below this diameter");

    auto* tube = app.add_subcommand("tube", "tube volumes over a log-spaced eps grid (CSV)");
    common(tube);
    tube->add_option("--eps-min", o.eps_min, "smallest eps");
    tube->add_option("--eps-max", o.eps_max, "largest eps");
    tube->add_option("--eps-n", o.eps_n, "number of eps samples");
    tube->add_option("--methods", methods, "comma list of scaling_sum, grid, residue, steiner-outer");

    auto* dims = app.add_subcommand("dims", "similarity dimension and complex dimensions (CSV)");
    common(dims);
    dims->add_option("--im-max", o.im_max, "search |Im s| <= im-max");

    auto* env = app.add_subcommand("envelope", "envelope geometry, convexity and feasibility of its interior");
    common(env);
    env->add_option("--depth", o.depth, "cover depth (default 5)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fractile::cli::kUsage;
    }
    if (!methods.empty()) {
        o.methods.clear();
        size_t start = 0;
        while (start <= methods.size()) {
            const size_t comma = methods.find(',', start);
            const std::string m = methods.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!m.empty()) o.methods.push_back(m);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return fractile::cli::run(app.get_subcommands().front()->get_name(), o, std::cout, std::cerr);
}
