#include "sparsecode/cli.hpp"

int main(int argc, char** argv) { return sparsecode::cli::run(argc, argv); }
