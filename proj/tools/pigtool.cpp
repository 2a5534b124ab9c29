#include <iostream>

#include "pig/commands.hpp"

int main(int argc, char** argv) { return pig::run_cli(argc, argv, std::cout, std::cerr); }
