#include <iostream>

#include "neron/cli.hpp"

int main(int argc, char **argv) {
    return neron::cli::run(argc, argv, std::cout, std::cerr);
}
