// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Prints the vacuum multiplication table of the noise increments and one
//! operator-valued product.

use stark_qsde::ito_algebra::{r3, r_plus, Increment, ItoElement};

fn name(i: Increment) -> &'static str {
    match i {
        Increment::Time => "dτ",
        Increment::Annihilation => "dB",
        Increment::Creation => "dB†",
        Increment::Gauge => "dΛ",
    }
}

fn main() {
    print!("{:>6}", "");
    for col in Increment::ALL {
        print!("{:>6}", name(col));
    }
    println!();
    for row in Increment::ALL {
        print!("{:>6}", name(row));
        for col in Increment::ALL {
            let cell = row.product(col).map_or("0", name);
            print!("{cell:>6}");
        }
        println!();
    }

    let a = ItoElement::single(Increment::Annihilation, r_plus());
    let b = ItoElement::single(Increment::Gauge, r3());
    let ab = a.multiply(&b).expect("same dimension");
    println!("\n(R₊ dB)·(R₃ dΛ) = (R₊R₃) dB with R₊R₃ =");
    println!("{}", ab.db().matrix());
    let ba = b.multiply(&a).expect("same dimension");
    println!("(R₃ dΛ)·(R₊ dB) is zero: {}", ba.is_zero());
}
