#include "crowdsim/cli.hpp"

int main(int argc, char** argv) { return crowdsim::run_cli(argc, argv); }
