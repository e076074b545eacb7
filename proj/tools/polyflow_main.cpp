#include <string>
#include <vector>

#include "polyflow/cli.hpp"

int main(int argc, char** argv) {
  return polyflow::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
