#include <iostream>

#include "latdist/cli.hpp"

int main(int argc, char** argv) {
  return latdist::cli_main(argc, argv, std::cout, std::cerr);
}
