#include <iostream>

#include "qht/cli.hpp"

int main(int argc, char** argv) {
    return qht::cli::run_main(argc, argv, std::cout, std::cerr);
}
