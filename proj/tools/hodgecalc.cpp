// Copyright 2026 The hodgecalc Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "hodge/cli.hpp"

int main(int argc, char** argv) {
  return hodge::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
