#include <iostream>
#include <string>
#include <vector>

#include "hclab/cli.hpp"

int main(int argc, char** argv) {
  return hclab::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
