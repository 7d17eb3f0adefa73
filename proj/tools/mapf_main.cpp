#include <iostream>

#include "mapf/cli.hpp"

int main(int argc, char** argv) {
  return mapf::cli_main({argv + 1, argv + argc}, std::cout, std::cerr);
}
