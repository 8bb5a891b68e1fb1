#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "abc/cli.hpp"

int main(int argc, char** argv) {
  const char* env = std::getenv("ABC_COLOR");
  bool color = isatty(STDERR_FILENO) != 0;
  if (env) color = std::strcmp(env, "0") != 0;
  return abc::runCli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr, color);
}
