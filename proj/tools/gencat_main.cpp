#include "gencat/cli.hpp"

int main(int argc, char** argv) { return gencat::cli::run_main(argc, argv); }
