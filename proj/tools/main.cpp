#include <vector>

#include "gamow/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gamow::run_cli(args);
}
