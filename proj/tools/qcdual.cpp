#include "qcduality/runner.hpp"

int main(int argc, char** argv) { return qcd::cli::main_entry(argc, argv); }
