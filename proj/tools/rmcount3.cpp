#include <CLI11.hpp>

#include "rmc/bigint.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rmcount3: zeta functions of genus-3 hyperelliptic curves with real multiplication"};
    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);
    return 0;
}
