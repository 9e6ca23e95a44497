#include <iostream>

#include "wecg/cli.hpp"

int main(int argc, char** argv) { return wecg::cli::run(argc, argv, std::cout, std::cerr); }
