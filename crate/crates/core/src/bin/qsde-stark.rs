// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    std::process::exit(stark_qsde::cli::run(std::env::args_os()));
}
