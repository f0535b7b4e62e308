#include <iostream>

#include "interlock/app.hpp"

int main(int argc, char** argv) {
  return interlock::app::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
