#include "cli.hpp"

int main(int argc, char** argv) { return saddle::cli::main_entry(argc, argv); }
