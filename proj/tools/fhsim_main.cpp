#include "fhsim/cli.hpp"

int main(int argc, char** argv) { return fhsim::cli::run_cli(argc, argv); }
