#include <iostream>

#include "wavecoeff/cli/runner.hpp"

int main(int argc, char** argv) {
  return wavecoeff::cli::run_cli(argc, argv, std::cout, std::cerr);
}
