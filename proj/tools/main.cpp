#include <iostream>
#include <string>
#include <vector>

#include "supergrass/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return supergrass::cli::run(std::move(args), std::cout, std::cerr);
}
