#include "lsat/cli.hpp"

int main(int argc, char** argv) { return lsat::cli::run(argc, argv); }
