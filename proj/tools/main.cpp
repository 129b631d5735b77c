#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return rtshuffle::cli::run(argc, argv, std::cout, std::cerr); }
