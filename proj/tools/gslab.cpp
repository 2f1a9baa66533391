#include "gslab/cli/run.hpp"

int main(int argc, char** argv) { return gslab::cli::main_entry(argc, argv); }
