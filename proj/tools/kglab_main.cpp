#include "kglab/commands.hpp"

int main(int argc, char** argv) { return kg::run_cli(argc, argv); }
