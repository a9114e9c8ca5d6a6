#include "bilgrow/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bilgrow::run_cli(argc, argv, std::cout, std::cerr); }
