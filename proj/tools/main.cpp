#include <iostream>

#include "wrnn/cli/cli.hpp"

int main(int argc, char** argv) {
  return wrnn::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
