#include "cli_app.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sturm::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
