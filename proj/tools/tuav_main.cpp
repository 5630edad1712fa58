#include <string>
#include <vector>

#include "tuav/cli.hpp"

int main(int argc, char** argv) {
  return tuav::run_cli(std::vector<std::string>(argv, argv + argc));
}
