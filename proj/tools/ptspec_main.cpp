#include <iostream>

#include "ptspec/cli/app.hpp"

int main(int argc, char** argv) {
  return ptspec::cli::run(argc, argv, std::cout, std::cerr);
}
