#include <iostream>

#include "antispoof/app.hpp"

int main(int argc, char** argv) { return codedlf::cli::run(argc, argv, std::cout, std::cerr); }
