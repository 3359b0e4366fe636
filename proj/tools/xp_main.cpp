// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "xp_cli.hpp"

int main(int argc, char **argv)
{
  return ratmat::cli::run(argc, argv, std::cout, std::cerr);
}
