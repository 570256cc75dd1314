#include "ssnreg_cli/commands.hpp"

int main(int argc, char** argv) { return ssnreg::cli::run_cli(argc, argv); }
