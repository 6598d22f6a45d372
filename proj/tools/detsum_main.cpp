#include <vector>

#include "detsum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return detsum::cli_main(args);
}
