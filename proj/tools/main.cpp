// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli_app.hpp"

int main(int argc, char** argv) {
    return cachesched::cli::run(argc, argv);
}
