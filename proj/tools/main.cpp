#include "ecoidx/commands.hpp"

int main(int argc, char** argv) { return ecoidx::cli::run(argc, argv); }
