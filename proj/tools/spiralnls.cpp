// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/cli.hpp"

int main(int argc, char **argv)
{
  return spiralnls::run_cli(argc, argv);
}
