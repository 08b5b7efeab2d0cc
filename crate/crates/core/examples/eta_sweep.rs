// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Runs the sweep command in process and prints its CSV.
//!
//! Equivalent to
//! `qsde-stark sweep --chi 1 --eta-min 0 --eta-max 12.566 --points 17 --out sweep.csv`
//! without touching the file system.

use std::f64::consts::PI;

use stark_qsde::cli::execute;
use stark_qsde::config::Config;

fn main() {
    let mut cfg = Config::new();
    cfg.set("command", "sweep");
    cfg.set("model.chi", 1.0);
    cfg.set("sweep.eta_min", 0.0);
    cfg.set("sweep.eta_max", 4.0 * PI);
    cfg.set("sweep.points", 17);
    cfg.set("tolerance.residual", 1e-12);
    let report = execute(&cfg).expect("sweep runs");
    print!("{}", report.table.render());
    for line in report.summary {
        eprintln!("{line}");
    }
}
