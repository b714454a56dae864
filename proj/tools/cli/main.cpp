#include "commands.hpp"

int main(int argc, char** argv) { return astute::cli::run(argc, argv); }
