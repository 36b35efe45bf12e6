#include <iostream>
#include <string>
#include <vector>

#include "asrr/cli.hpp"

int main(int argc, char** argv) {
    return asrr::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
