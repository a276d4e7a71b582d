#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pfaff/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact invariants of degree-four algebras with orthogonal involution"};
    app.require_subcommand(1);

    std::string path, path_a, path_b, field_arg, conj_raw;
    int trials = 10;
    std::uint64_t seed = 1;

    CLI::App* inv = app.add_subcommand("invariants", "print the invariant report of a spec file");
    inv->add_option("file", path, "instance spec file")->required();

    CLI::App* cmp = app.add_subcommand("compare", "compare the involutions of two spec files");
    cmp->add_option("left", path_a, "first instance spec file")->required();
    cmp->add_option("right", path_b, "second instance spec file")->required();
    CLI::Option* copt = cmp->add_option("--conjugate", conj_raw,
                                        "conjugate the right involution by this element literal");

    CLI::App* ver = app.add_subcommand("verify", "run the property suites on random instances");
    ver->add_option("--field", field_arg, "field descriptor, e.g. Q, F5, F4, F2st, Fp:7")
        ->required();
    ver->add_option("--trials", trials, "number of random instances");
    ver->add_option("--seed", seed, "random seed (PFAFF_SEED overrides)");

    CLI::App* rep = app.add_subcommand("reproduce-example",
                                       "rebuild the example of involutions separated by their "
                                       "bilinear invariant yet sharing a square-central subalgebra");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::optional<std::uint64_t> env_seed;
    if (const char* env = std::getenv("PFAFF_SEED")) env_seed = std::strtoull(env, nullptr, 10);

    if (inv->parsed())
        return pfaff::cmd_invariants(path, std::cout, std::cerr, env_seed.value_or(0));
    if (cmp->parsed()) {
        std::optional<std::string> conjugate;
        if (copt->count()) conjugate = conj_raw;
        return pfaff::cmd_compare(path_a, path_b, conjugate, std::cout, std::cerr,
                                  env_seed.value_or(0));
    }
    if (ver->parsed())
        return pfaff::cmd_verify(field_arg, trials, env_seed.value_or(seed), std::cout, std::cerr);
    if (rep->parsed()) return pfaff::cmd_reproduce_example(std::cout, std::cerr);
    return 0;
}
