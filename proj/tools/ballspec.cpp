#include "ballspec/cli.hpp"

int main(int argc, char** argv) { return ballspec::cli::main_entry(argc, argv); }
