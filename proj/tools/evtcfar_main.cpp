#include <iostream>
#include <string>
#include <vector>

#include "evtcfar/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return evtcfar::cli::run(args, std::cout, std::cerr);
}
