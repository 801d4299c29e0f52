#include "centering/cli.hpp"

int main(int argc, char** argv) { return centering::cli::main(argc, argv); }
