#include <iostream>

#include "qms/cli.hpp"

int main(int argc, char** argv) { return qms::run(argc, argv, std::cout, std::cerr); }
