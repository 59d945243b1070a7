#include "schmidt/cli.hpp"

int main(int argc, char** argv) { return schmidt::cli::main_entry(argc, argv); }
