#include <iostream>

#include "compdof/cli.hpp"

int main(int argc, char** argv) {
  return compdof::cli::run(argc, argv, std::cout, std::cerr);
}
