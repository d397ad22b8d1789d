#include <zerosum/cli.hpp>

#include <iostream>

int main(int argc, char **argv) {
  return zerosum::cli::run(argc, argv, std::cout, std::cerr);
}
