// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "espira/cli.hpp"

int main(int argc, char **argv)
{
  return espira::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
