#include <iostream>

#include "rdm/service/cli.hpp"

int main(int argc, char** argv) { return rdm::cli_main(argc, argv, std::cout, std::cerr); }
