#include <iostream>

#include "beurling/cli.hpp"

int main(int argc, char** argv) {
  return beurling::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
