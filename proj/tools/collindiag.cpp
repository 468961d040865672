#include <iostream>
#include <string>
#include <vector>

#include "collindiag/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return collindiag::cli::run(args, std::cout, std::cerr,
                              collindiag::cli::Environment::from_process());
}
