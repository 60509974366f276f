#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  bstone::cli::ExperimentConfig config;
  if (auto status = bstone::cli::parse_args(argc, argv, config, std::cout, std::cerr)) return *status;
  return bstone::cli::run(config, std::cout, std::cerr);
}
