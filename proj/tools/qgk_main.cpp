#include <iostream>

#include "qgk/cli.hpp"

int main(int argc, char** argv) { return qgk::run_cli({argv + 1, argv + argc}, std::cout, std::cerr); }
