#include <iostream>

#include "aads/cli.hpp"

int main(int argc, char** argv) { return aads::dispatch(argc, argv, std::cout, std::cerr); }
