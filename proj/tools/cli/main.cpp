#include <iostream>
#include <string>
#include <vector>

#include "sl2grow/app/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sl2grow::app::run(args, std::cout, std::cerr);
}
