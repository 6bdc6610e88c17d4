#include <iostream>
#include <string>
#include <vector>

#include "qcorr_app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return qcorr::app::run(args, std::cout, std::cerr);
}
