#include <iostream>

#include "fairdiv/cli.hpp"

int main(int argc, char** argv) {
    return fairdiv::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
