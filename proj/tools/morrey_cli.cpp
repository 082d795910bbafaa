#include "morrey/harness/cli.hpp"

int main(int argc, char** argv) { return morrey::harness::run_cli(argc, argv); }
