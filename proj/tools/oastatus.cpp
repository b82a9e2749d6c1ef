#include "oa/cli.hpp"

int main(int argc, char** argv) {
    return oa::cli_run(argc, argv);
}
