#include <iostream>

#include "collatz/cli.hpp"

int main(int argc, char** argv) {
  return collatz::cli::run(argc, argv, std::cout, std::cerr);
}
