#include <iostream>

#include "tempscale_cli/app.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return tempscale::cli::run({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
