#include <iostream>

#include "rotinv/cli.hpp"

int main(int argc, char** argv) {
  return rotinv::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
