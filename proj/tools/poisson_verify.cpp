#include <iostream>

#include "poisson/cli.hpp"

int main(int argc, char** argv) {
  return poisson::cli::run_cli(argc, argv, std::cout, std::cerr);
}
