#include "fltz/cli.hpp"
#include "fltz/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fltz;

namespace {

struct Raw {
    std::string window, point;
};

void add_window(CLI::App* sub, Raw& raw) {
    sub->add_option("--window", raw.window, "open cube LO,HI (default: auto from the divisors)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fltz: line bundles on toric varieties as constructible sheaves"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    Raw raw;
    app.add_option("--out", cfg.out_dir, "also write the JSON report into this directory");
    app.add_option("--seed", cfg.seed, "seed for sample points")->capture_default_str();

    auto* fan = app.add_subcommand("fan", "fan checks")->require_subcommand(1);
    auto* fan_check = fan->add_subcommand("check", "smoothness and a projectivity witness");
    fan_check->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    fan_check->add_option("--dot", cfg.dot_path, "write the cone poset as DOT");
    auto* fan_poly = fan->add_subcommand("polytope", "moment polytope of a divisor");
    fan_poly->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    fan_poly->add_option("divisor", cfg.divisor_paths)->required()->expected(1)->check(CLI::ExistingFile);

    auto* strata = app.add_subcommand("strata", "strata of the arrangement in a window");
    strata->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    strata->add_option("divisors", cfg.divisor_paths)->check(CLI::ExistingFile);
    strata->add_option("--dot", cfg.dot_path, "write the strata poset as DOT");
    add_window(strata, raw);

    auto* kappa = app.add_subcommand("kappa", "the sheaf of a line bundle");
    kappa->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    kappa->add_option("divisor", cfg.divisor_paths)->required()->expected(1)->check(CLI::ExistingFile);
    kappa->add_option("--point", raw.point, "also report the stalk here");
    add_window(kappa, raw);

    auto* hom = app.add_subcommand("hom", "Ext between two line bundles");
    hom->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    hom->add_option("divisors", cfg.divisor_paths)->required()->expected(2)->check(CLI::ExistingFile);
    hom->add_option("--max-doublings", cfg.max_doublings, "twist box doublings before giving up")
        ->capture_default_str();

    auto* table = app.add_subcommand("ext-table", "Ext between every pair of line bundles");
    table->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    table->add_option("divisors", cfg.divisor_paths)->required()->check(CLI::ExistingFile);

    auto* glue = app.add_subcommand("glue-check", "the dual-cone cover glues to the unit");
    glue->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    glue->add_option("--samples", cfg.samples)->capture_default_str();

    auto* probe = app.add_subcommand("probe", "probing sheaf against the stalk at a point");
    probe->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    probe->add_option("divisor", cfg.divisor_paths)->required()->expected(1)->check(CLI::ExistingFile);
    probe->add_option("--point", raw.point)->required();

    auto* ss = app.add_subcommand("ss-check", "singular support inside the skeleton");
    ss->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    ss->add_option("divisor", cfg.divisor_paths)->required()->expected(1)->check(CLI::ExistingFile);
    ss->add_option("--point", raw.point, "check one point instead of the fundamental domain");
    add_window(ss, raw);

    auto* morelli = app.add_subcommand("morelli", "constructible function of a divisor class");
    morelli->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);
    morelli->add_option("divisors", cfg.divisor_paths)->required()->check(CLI::ExistingFile);
    morelli->add_option("--coeffs", cfg.coefficients, "one integer per divisor (default 1)")->delimiter(',');
    morelli->add_option("--csv", cfg.csv_path, "write the function as CSV");
    add_window(morelli, raw);

    auto* beil = app.add_subcommand("beilinson", "Ext quiver of O, O(1) on P1");
    beil->add_option("fan", cfg.fan_path)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help requests exit 0
        return app.exit(e) == 0 ? kExitPass : kExitBadInput;
    }

    for (auto* sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
        for (auto* inner : sub->get_subcommands()) cfg.command += " " + inner->get_name();
    }
    try {
        if (!raw.point.empty()) cfg.point = parse_point(raw.point);
        if (!raw.window.empty()) {
            QVec lh = parse_point(raw.window);
            if (lh.size() != 2 || !(lh[0] < lh[1])) throw std::invalid_argument("--window expects LO,HI with LO < HI");
            cfg.window = std::make_pair(lh[0], lh[1]);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return run(cfg, std::cout, std::cerr);
}
