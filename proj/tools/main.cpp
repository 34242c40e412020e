#include "cli.hpp"

int main(int argc, char** argv) { return nhqc::run_cli(argc, argv); }
